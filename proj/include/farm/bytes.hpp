#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

namespace farm {

// Big-endian (network order) primitive serialization. All wire and payload
// encodings in this project go through these two helpers.

class ByteWriter {
public:
    void u8(uint8_t v) { buf_.push_back(v); }

    void u32(uint32_t v) {
        buf_.push_back(static_cast<uint8_t>(v >> 24));
        buf_.push_back(static_cast<uint8_t>(v >> 16));
        buf_.push_back(static_cast<uint8_t>(v >> 8));
        buf_.push_back(static_cast<uint8_t>(v));
    }

    void u64(uint64_t v) {
        for (int shift = 56; shift >= 0; shift -= 8)
            buf_.push_back(static_cast<uint8_t>(v >> shift));
    }

    void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }

    void raw(std::span<const uint8_t> bytes) {
        buf_.insert(buf_.end(), bytes.begin(), bytes.end());
    }

    // Length-prefixed byte blob: u32 size, then the bytes.
    void blob(std::span<const uint8_t> bytes) {
        u32(static_cast<uint32_t>(bytes.size()));
        raw(bytes);
    }

    size_t size() const { return buf_.size(); }
    const std::vector<uint8_t>& bytes() const { return buf_; }
    std::vector<uint8_t> take() { return std::move(buf_); }

private:
    std::vector<uint8_t> buf_;
};

// Cursor over a byte span. Reads return false once the input is exhausted;
// the caller checks ok() (or each return) instead of handling exceptions.
class ByteReader {
public:
    explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

    bool u8(uint8_t& out) {
        if (pos_ + 1 > data_.size()) return fail();
        out = data_[pos_++];
        return true;
    }

    bool u32(uint32_t& out) {
        if (pos_ + 4 > data_.size()) return fail();
        out = (static_cast<uint32_t>(data_[pos_]) << 24) |
              (static_cast<uint32_t>(data_[pos_ + 1]) << 16) |
              (static_cast<uint32_t>(data_[pos_ + 2]) << 8) |
              static_cast<uint32_t>(data_[pos_ + 3]);
        pos_ += 4;
        return true;
    }

    bool u64(uint64_t& out) {
        if (pos_ + 8 > data_.size()) return fail();
        out = 0;
        for (int i = 0; i < 8; ++i) out = (out << 8) | data_[pos_ + i];
        pos_ += 8;
        return true;
    }

    bool f64(double& out) {
        uint64_t bits = 0;
        if (!u64(bits)) return false;
        out = std::bit_cast<double>(bits);
        return true;
    }

    bool blob(std::vector<uint8_t>& out) {
        uint32_t n = 0;
        if (!u32(n)) return false;
        if (pos_ + n > data_.size()) return fail();
        out.assign(data_.begin() + pos_, data_.begin() + pos_ + n);
        pos_ += n;
        return true;
    }

    size_t pos() const { return pos_; }
    size_t remaining() const { return data_.size() - pos_; }
    bool ok() const { return ok_; }
    bool exhausted() const { return pos_ == data_.size(); }

private:
    bool fail() {
        ok_ = false;
        return false;
    }

    std::span<const uint8_t> data_;
    size_t pos_ = 0;
    bool ok_ = true;
};

}  // namespace farm
