// Placeholder main; replaced by the full subcommand surface once the
// pipeline modules land.
int main() { return 0; }
