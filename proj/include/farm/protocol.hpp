#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace farm::proto {

// Frame layout (bit-exact): [length: u32 BE][version: u8][tag: u8][payload].
// length counts payload bytes only. All integers big-endian.

constexpr uint8_t kVersion = 1;
constexpr size_t kHeaderSize = 6;
constexpr uint32_t kMaxPayload = 16u * 1024 * 1024;

enum class Tag : uint8_t {
    ClientHello = 0x01,
    HelloAck = 0x02,
    ChunkRequest = 0x03,
    TaskChunk = 0x04,
    Drained = 0x05,
    ResultChunk = 0x06,
    ResultAck = 0x07,
    Heartbeat = 0x08,
    HeartbeatAck = 0x09,
    ShutdownNotice = 0x0A,
};

enum class ShutdownReason : uint8_t {
    ServerStopping = 0,
    Rejected = 1,
};

using Blob = std::vector<uint8_t>;

struct ClientHello {
    uint32_t requested_slots = 0;
    bool operator==(const ClientHello&) const = default;
};

struct HelloAck {
    uint64_t client_id = 0;
    uint32_t lease_ms = 0;
    uint32_t chunk_max = 0;
    bool operator==(const HelloAck&) const = default;
};

struct ChunkRequest {
    uint64_t client_id = 0;
    uint32_t max_tasks = 0;
    bool operator==(const ChunkRequest&) const = default;
};

struct TaskChunk {
    uint64_t chunk_id = 0;
    std::vector<Blob> tasks;
    bool operator==(const TaskChunk&) const = default;
};

struct Drained {
    bool operator==(const Drained&) const = default;
};

struct ResultChunk {
    uint64_t chunk_id = 0;
    std::vector<Blob> results;
    bool operator==(const ResultChunk&) const = default;
};

struct ResultAck {
    uint64_t chunk_id = 0;
    bool operator==(const ResultAck&) const = default;
};

struct Heartbeat {
    uint64_t client_id = 0;
    uint64_t seq = 0;
    bool operator==(const Heartbeat&) const = default;
};

struct HeartbeatAck {
    uint64_t seq = 0;
    bool operator==(const HeartbeatAck&) const = default;
};

struct ShutdownNotice {
    ShutdownReason reason = ShutdownReason::ServerStopping;
    bool operator==(const ShutdownNotice&) const = default;
};

using Message = std::variant<ClientHello, HelloAck, ChunkRequest, TaskChunk, Drained,
                             ResultChunk, ResultAck, Heartbeat, HeartbeatAck, ShutdownNotice>;

struct OversizePayload : std::length_error {
    using std::length_error::length_error;
};

enum class DecodeStatus {
    Ok,
    Incomplete,       // need more bytes; not an error
    BadVersion,
    UnknownTag,
    MalformedPayload,
};

struct Decoded {
    DecodeStatus status = DecodeStatus::Incomplete;
    Message message;
    size_t consumed = 0;
};

// Deterministic: the same message always yields the same bytes.
// Throws OversizePayload if the payload would exceed kMaxPayload.
Blob encode_message(const Message& msg);

// Parses one frame from the front of `bytes`. Decoding a strict prefix of a
// valid frame reports Incomplete, never MalformedPayload; trailing bytes
// after the frame are left untouched (consumed covers the frame only).
Decoded decode_message(std::span<const uint8_t> bytes);

Tag message_tag(const Message& msg);
const char* to_string(DecodeStatus status);
const char* to_string(Tag tag);

}  // namespace farm::proto
