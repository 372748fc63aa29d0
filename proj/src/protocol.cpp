#include "farm/protocol.hpp"

#include "farm/bytes.hpp"

namespace farm::proto {

namespace {

void encode_blob_list(ByteWriter& w, const std::vector<Blob>& blobs) {
    w.u32(static_cast<uint32_t>(blobs.size()));
    for (const Blob& b : blobs) w.blob(b);
}

bool decode_blob_list(ByteReader& r, std::vector<Blob>& out) {
    uint32_t count = 0;
    if (!r.u32(count)) return false;
    // Each blob carries at least its 4-byte size; rejects absurd counts early.
    if (static_cast<uint64_t>(count) * 4 > r.remaining()) return false;
    out.resize(count);
    for (uint32_t i = 0; i < count; ++i)
        if (!r.blob(out[i])) return false;
    return true;
}

void encode_payload(ByteWriter& w, const Message& msg) {
    std::visit(
        [&w](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ClientHello>) {
                w.u32(m.requested_slots);
            } else if constexpr (std::is_same_v<T, HelloAck>) {
                w.u64(m.client_id);
                w.u32(m.lease_ms);
                w.u32(m.chunk_max);
            } else if constexpr (std::is_same_v<T, ChunkRequest>) {
                w.u64(m.client_id);
                w.u32(m.max_tasks);
            } else if constexpr (std::is_same_v<T, TaskChunk>) {
                w.u64(m.chunk_id);
                encode_blob_list(w, m.tasks);
            } else if constexpr (std::is_same_v<T, Drained>) {
                // empty payload
            } else if constexpr (std::is_same_v<T, ResultChunk>) {
                w.u64(m.chunk_id);
                encode_blob_list(w, m.results);
            } else if constexpr (std::is_same_v<T, ResultAck>) {
                w.u64(m.chunk_id);
            } else if constexpr (std::is_same_v<T, Heartbeat>) {
                w.u64(m.client_id);
                w.u64(m.seq);
            } else if constexpr (std::is_same_v<T, HeartbeatAck>) {
                w.u64(m.seq);
            } else if constexpr (std::is_same_v<T, ShutdownNotice>) {
                w.u8(static_cast<uint8_t>(m.reason));
            }
        },
        msg);
}

// Returns false on any structural mismatch (truncated fields, bad enum
// values, leftover bytes); the caller maps that to MalformedPayload.
bool decode_payload(Tag tag, std::span<const uint8_t> payload, Message& out) {
    ByteReader r(payload);
    switch (tag) {
        case Tag::ClientHello: {
            ClientHello m;
            if (!r.u32(m.requested_slots)) return false;
            out = m;
            break;
        }
        case Tag::HelloAck: {
            HelloAck m;
            if (!r.u64(m.client_id) || !r.u32(m.lease_ms) || !r.u32(m.chunk_max)) return false;
            out = m;
            break;
        }
        case Tag::ChunkRequest: {
            ChunkRequest m;
            if (!r.u64(m.client_id) || !r.u32(m.max_tasks)) return false;
            out = m;
            break;
        }
        case Tag::TaskChunk: {
            TaskChunk m;
            if (!r.u64(m.chunk_id) || !decode_blob_list(r, m.tasks)) return false;
            out = std::move(m);
            break;
        }
        case Tag::Drained:
            out = Drained{};
            break;
        case Tag::ResultChunk: {
            ResultChunk m;
            if (!r.u64(m.chunk_id) || !decode_blob_list(r, m.results)) return false;
            out = std::move(m);
            break;
        }
        case Tag::ResultAck: {
            ResultAck m;
            if (!r.u64(m.chunk_id)) return false;
            out = m;
            break;
        }
        case Tag::Heartbeat: {
            Heartbeat m;
            if (!r.u64(m.client_id) || !r.u64(m.seq)) return false;
            out = m;
            break;
        }
        case Tag::HeartbeatAck: {
            HeartbeatAck m;
            if (!r.u64(m.seq)) return false;
            out = m;
            break;
        }
        case Tag::ShutdownNotice: {
            uint8_t reason = 0;
            if (!r.u8(reason)) return false;
            if (reason > static_cast<uint8_t>(ShutdownReason::Rejected)) return false;
            out = ShutdownNotice{static_cast<ShutdownReason>(reason)};
            break;
        }
        default:
            return false;
    }
    return r.exhausted();  // length must match the fields exactly
}

bool valid_tag(uint8_t tag) {
    return tag >= static_cast<uint8_t>(Tag::ClientHello) &&
           tag <= static_cast<uint8_t>(Tag::ShutdownNotice);
}

}  // namespace

Tag message_tag(const Message& msg) {
    static constexpr Tag tags[] = {Tag::ClientHello, Tag::HelloAck,   Tag::ChunkRequest,
                                   Tag::TaskChunk,   Tag::Drained,    Tag::ResultChunk,
                                   Tag::ResultAck,   Tag::Heartbeat,  Tag::HeartbeatAck,
                                   Tag::ShutdownNotice};
    return tags[msg.index()];
}

Blob encode_message(const Message& msg) {
    ByteWriter payload;
    encode_payload(payload, msg);
    if (payload.size() > kMaxPayload)
        throw OversizePayload("message payload exceeds 16 MiB frame cap");

    ByteWriter frame;
    frame.u32(static_cast<uint32_t>(payload.size()));
    frame.u8(kVersion);
    frame.u8(static_cast<uint8_t>(message_tag(msg)));
    frame.raw(payload.bytes());
    return frame.take();
}

Decoded decode_message(std::span<const uint8_t> bytes) {
    Decoded result;
    if (bytes.size() < kHeaderSize) {
        result.status = DecodeStatus::Incomplete;
        return result;
    }

    ByteReader header(bytes.first(kHeaderSize));
    uint32_t length = 0;
    uint8_t version = 0, tag = 0;
    header.u32(length);
    header.u8(version);
    header.u8(tag);

    if (version != kVersion) {
        result.status = DecodeStatus::BadVersion;
        return result;
    }
    if (!valid_tag(tag)) {
        result.status = DecodeStatus::UnknownTag;
        return result;
    }
    if (length > kMaxPayload) {
        result.status = DecodeStatus::MalformedPayload;
        return result;
    }
    if (bytes.size() < kHeaderSize + length) {
        result.status = DecodeStatus::Incomplete;
        return result;
    }

    std::span<const uint8_t> payload = bytes.subspan(kHeaderSize, length);
    if (!decode_payload(static_cast<Tag>(tag), payload, result.message)) {
        result.status = DecodeStatus::MalformedPayload;
        return result;
    }
    result.status = DecodeStatus::Ok;
    result.consumed = kHeaderSize + length;
    return result;
}

const char* to_string(DecodeStatus status) {
    switch (status) {
        case DecodeStatus::Ok: return "ok";
        case DecodeStatus::Incomplete: return "incomplete";
        case DecodeStatus::BadVersion: return "bad_version";
        case DecodeStatus::UnknownTag: return "unknown_tag";
        case DecodeStatus::MalformedPayload: return "malformed_payload";
    }
    return "?";
}

const char* to_string(Tag tag) {
    switch (tag) {
        case Tag::ClientHello: return "client_hello";
        case Tag::HelloAck: return "hello_ack";
        case Tag::ChunkRequest: return "chunk_request";
        case Tag::TaskChunk: return "task_chunk";
        case Tag::Drained: return "drained";
        case Tag::ResultChunk: return "result_chunk";
        case Tag::ResultAck: return "result_ack";
        case Tag::Heartbeat: return "heartbeat";
        case Tag::HeartbeatAck: return "heartbeat_ack";
        case Tag::ShutdownNotice: return "shutdown_notice";
    }
    return "?";
}

}  // namespace farm::proto
