#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "farm/protocol.hpp"
#include "farm/rng.hpp"

using namespace farm;
using namespace farm::proto;

namespace {

Message random_message(Rng& rng) {
    auto random_blob = [&rng](size_t max_len) {
        Blob b(rng.below(max_len + 1));
        for (auto& byte : b) byte = static_cast<uint8_t>(rng.u64());
        return b;
    };
    auto random_blobs = [&](size_t max_count, size_t max_len) {
        std::vector<Blob> v(rng.below(max_count + 1));
        for (auto& b : v) b = random_blob(max_len);
        return v;
    };

    switch (rng.below(10)) {
        case 0: return ClientHello{static_cast<uint32_t>(rng.u64())};
        case 1: return HelloAck{rng.u64(), static_cast<uint32_t>(rng.u64()),
                                static_cast<uint32_t>(rng.u64())};
        case 2: return ChunkRequest{rng.u64(), static_cast<uint32_t>(rng.u64())};
        case 3: return TaskChunk{rng.u64(), random_blobs(8, 64)};
        case 4: return Drained{};
        case 5: return ResultChunk{rng.u64(), random_blobs(8, 64)};
        case 6: return ResultAck{rng.u64()};
        case 7: return Heartbeat{rng.u64(), rng.u64()};
        case 8: return HeartbeatAck{rng.u64()};
        default:
            return ShutdownNotice{rng.chance(0.5) ? ShutdownReason::ServerStopping
                                                  : ShutdownReason::Rejected};
    }
}

}  // namespace

TEST_CASE("heartbeat frame layout is bit-exact") {
    Blob frame = encode_message(Heartbeat{7, 3});
    // [length=16 BE][version=1][tag=0x08][client_id=7 BE u64][seq=3 BE u64]
    Blob expected = {0, 0, 0, 16, 1, 0x08, 0, 0, 0, 0, 0, 0, 0, 7, 0, 0, 0, 0, 0, 0, 0, 3};
    CHECK(frame == expected);
}

TEST_CASE("drained frame has empty payload") {
    Blob frame = encode_message(Drained{});
    Blob expected = {0, 0, 0, 0, 1, 0x05};
    CHECK(frame == expected);
}

TEST_CASE("encode is deterministic") {
    Message m = TaskChunk{42, {{1, 2, 3}, {}, {9}}};
    CHECK(encode_message(m) == encode_message(m));
}

TEST_CASE("empty input decodes as incomplete") {
    CHECK(decode_message({}).status == DecodeStatus::Incomplete);
}

TEST_CASE("reserved tag 0xFF is rejected") {
    Blob frame = {0, 0, 0, 0, 1, 0xFF};
    CHECK(decode_message(frame).status == DecodeStatus::UnknownTag);
}

TEST_CASE("version mismatch is rejected before payload parsing") {
    Blob frame = encode_message(Heartbeat{1, 1});
    frame[4] = 2;
    CHECK(decode_message(frame).status == DecodeStatus::BadVersion);
    // Rejected even though the payload itself is truncated garbage.
    Blob short_frame = {0, 0, 0, 16, 9, 0x08, 0};
    CHECK(decode_message(short_frame).status == DecodeStatus::BadVersion);
}

TEST_CASE("trailing bytes are left untouched") {
    Blob frame = encode_message(Heartbeat{7, 3});
    size_t frame_size = frame.size();
    frame.insert(frame.end(), {0xAA, 0xBB, 0xCC});
    Decoded d = decode_message(frame);
    REQUIRE(d.status == DecodeStatus::Ok);
    CHECK(d.consumed == frame_size);
    CHECK(d.message == Message{Heartbeat{7, 3}});
}

TEST_CASE("oversize payload is refused at encode time") {
    TaskChunk chunk;
    chunk.tasks.push_back(Blob(kMaxPayload + 1, 0));
    CHECK_THROWS_AS(encode_message(chunk), OversizePayload);
}

TEST_CASE("malformed payloads") {
    SUBCASE("length shorter than fields") {
        Blob frame = {0, 0, 0, 3, 1, 0x01, 0, 0, 0};  // ClientHello needs 4 bytes
        CHECK(decode_message(frame).status == DecodeStatus::MalformedPayload);
    }
    SUBCASE("length longer than fields") {
        Blob frame = encode_message(ClientHello{4});
        frame[3] = 5;  // claim 5 payload bytes
        frame.push_back(0);
        CHECK(decode_message(frame).status == DecodeStatus::MalformedPayload);
    }
    SUBCASE("shutdown reason out of range") {
        Blob frame = {0, 0, 0, 1, 1, 0x0A, 7};
        CHECK(decode_message(frame).status == DecodeStatus::MalformedPayload);
    }
    SUBCASE("blob count inconsistent with payload size") {
        Blob frame = encode_message(TaskChunk{1, {{1, 2}}});
        frame[17] = 200;  // low byte of the blob count, far more blobs than bytes
        CHECK(decode_message(frame).status == DecodeStatus::MalformedPayload);
    }
    SUBCASE("frame length over the 16 MiB cap") {
        Blob frame = {0xFF, 0, 0, 0, 1, 0x04};
        CHECK(decode_message(frame).status == DecodeStatus::MalformedPayload);
    }
}

TEST_CASE("strict prefixes of valid frames are incomplete") {
    Rng rng(20240501);
    for (int i = 0; i < 50; ++i) {
        Blob frame = encode_message(random_message(rng));
        for (size_t len = 0; len < frame.size(); ++len) {
            Decoded d = decode_message(std::span(frame.data(), len));
            CAPTURE(len);
            REQUIRE(d.status == DecodeStatus::Incomplete);
        }
    }
}

TEST_CASE("randomized round-trip identity") {
    Rng rng(7);
    for (int i = 0; i < 5000; ++i) {
        Message m = random_message(rng);
        Blob frame = encode_message(m);
        Decoded d = decode_message(frame);
        REQUIRE(d.status == DecodeStatus::Ok);
        REQUIRE(d.consumed == frame.size());
        REQUIRE(d.message == m);
    }
}

TEST_CASE("concatenated messages decode in order") {
    Rng rng(99);
    for (int round = 0; round < 20; ++round) {
        std::vector<Message> msgs;
        Blob buffer;
        size_t count = 1 + rng.below(10);
        for (size_t i = 0; i < count; ++i) {
            msgs.push_back(random_message(rng));
            Blob frame = encode_message(msgs.back());
            buffer.insert(buffer.end(), frame.begin(), frame.end());
        }
        size_t offset = 0;
        for (const Message& expected : msgs) {
            Decoded d = decode_message(std::span(buffer).subspan(offset));
            REQUIRE(d.status == DecodeStatus::Ok);
            REQUIRE(d.message == expected);
            offset += d.consumed;
        }
        CHECK(offset == buffer.size());
    }
}
