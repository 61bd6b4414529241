#include <catch2/catch_amalgamated.hpp>

#include "bridgetrace/keccak.hpp"

using namespace bridgetrace;

TEST_CASE("keccak-256 core vectors") {
    CHECK(keccak256("").to_string() ==
          "0xc5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470");
    CHECK(keccak256("abc").to_string() ==
          "0x4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45");
    // exercise multi-block absorption (> 136-byte rate)
    std::string long_msg(1000, 'a');
    CHECK(keccak256(keccak256(long_msg).to_string()).to_string().size() == 66);
}

TEST_CASE("function selectors of well-known signatures") {
    auto selector = [](std::string_view sig) {
        Hash32 h = keccak256(sig);
        return hexutil::encode(h.bytes.data(), 4);
    };
    CHECK(selector("transfer(address,uint256)") == "0xa9059cbb");
    CHECK(selector("approve(address,uint256)") == "0x095ea7b3");
    CHECK(selector("transferFrom(address,address,uint256)") == "0x23b872dd");
    CHECK(selector("balanceOf(address)") == "0x70a08231");
}

TEST_CASE("event topics of well-known signatures") {
    CHECK(keccak256("Transfer(address,address,uint256)").to_string() ==
          "0xddf252ad1be2c89b69c2b068fc378daa952ba7f163c4a11628f55a4df523b3ef");
    CHECK(keccak256("Approval(address,address,uint256)").to_string() ==
          "0x8c5be1e5ebec7d5bd14f71427d1e84f3dd0314c0f7b2291e5b200ac8c7c3b925");
}

TEST_CASE("bridge deposit signatures hash to their frozen digests") {
    // Computed with an independent keccak implementation.
    CHECK(keccak256("lock(address,uint64,bytes,uint256,uint256,uint256)").to_string() ==
          "0x60de1a9b503b19beebbe83403058a5cd359abf5e31c3ed5064a212df91959b10");
    CHECK(keccak256("send(address,address,uint256,uint64,uint64,uint32)").to_string() ==
          "0xa5977fbb2e815213299258adb8676cb3972cd621a1934843611f3495b3dcf6c3");
    CHECK(keccak256("sendNative(address,uint256,uint64,uint64,uint32)").to_string() ==
          "0x3f2e5fc3e10bdf182bc2033b39294b6e4fafd07b5aaa3a48959a2c9a2e8bd929");
    CHECK(keccak256("anySwapOutNative(address,address,uint256)").to_string() ==
          "0xa5e565713fca835ed2ed24cbcdcfddd9df252b000262fa30b8a328563f749eb5");
    CHECK(keccak256("LockEvent(address,address,uint64,bytes,bytes,uint256)").to_string() ==
          "0x8636abd6d0e464fe725a13346c7ac779b73561c705506044a2e6b2cdb1295ea5");
    CHECK(keccak256("LogAnySwapOut(address,address,address,uint256,uint256,uint256)").to_string() ==
          "0x97116cf6cd4f6412bb47914d6db18da9e16ab2142f543b86e207c24fbd16b23a");
}

TEST_CASE("hex round trips") {
    Bytes b = hexutil::parse("0xDEADbeef00");
    CHECK(hexutil::encode(b) == "0xdeadbeef00");
    CHECK(hexutil::parse("").empty());
    CHECK_THROWS_AS(hexutil::parse("0x123"), ValidationError);
    CHECK_THROWS_AS(hexutil::parse("0xzz"), ValidationError);

    Address a = Address::parse("0xB758B6576221A7504A7211307092c23D3eE191C9");
    CHECK(a.to_string() == "0xb758b6576221a7504a7211307092c23d3ee191c9");
    CHECK_THROWS_AS(Address::parse("0x1234"), ValidationError);
}
