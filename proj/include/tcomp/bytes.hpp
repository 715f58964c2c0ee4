#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tcomp {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Little-endian byte sink.
class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u32(std::uint32_t v) { put_le(v); }
    void u64(std::uint64_t v) { put_le(v); }
    void i64(std::int64_t v) { put_le(static_cast<std::uint64_t>(v)); }
    void f64(double v) { put_le(std::bit_cast<std::uint64_t>(v)); }
    void tag(std::string_view four) { buf_.insert(buf_.end(), four.begin(), four.end()); }
    void bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
    void f64s(std::span<const double> v) {
        for (double d : v) f64(d);
    }

    const std::vector<std::uint8_t>& buffer() const { return buf_; }
    std::vector<std::uint8_t> take() { return std::move(buf_); }
    std::size_t size() const { return buf_.size(); }

private:
    template <typename U>
    void put_le(U v) {
        for (std::size_t b = 0; b < sizeof(U); ++b) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
    }
    std::vector<std::uint8_t> buf_;
};

/// Little-endian byte source; throws FormatError("truncated ...") on overrun.
class ByteReader {
public:
    ByteReader(std::span<const std::uint8_t> data, std::string what = "payload")
        : data_(data), what_(std::move(what)) {}

    std::uint8_t u8() { return get_le<std::uint8_t>(); }
    std::uint32_t u32() { return get_le<std::uint32_t>(); }
    std::uint64_t u64() { return get_le<std::uint64_t>(); }
    std::int64_t i64() { return static_cast<std::int64_t>(get_le<std::uint64_t>()); }
    double f64() { return std::bit_cast<double>(get_le<std::uint64_t>()); }
    std::string tag() {
        need(4);
        std::string s(reinterpret_cast<const char*>(data_.data() + pos_), 4);
        pos_ += 4;
        return s;
    }
    std::span<const std::uint8_t> bytes(std::size_t n) {
        need(n);
        auto s = data_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    std::vector<double> f64s(std::size_t n) {
        need(n * 8);
        std::vector<double> out(n);
        for (auto& d : out) d = f64();
        return out;
    }

    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (data_.size() - pos_ < n) throw FormatError("truncated " + what_);
    }
    template <typename U>
    U get_le() {
        need(sizeof(U));
        U v = 0;
        for (std::size_t b = 0; b < sizeof(U); ++b) v |= static_cast<U>(static_cast<U>(data_[pos_ + b]) << (8 * b));
        pos_ += sizeof(U);
        return v;
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
    std::string what_;
};

}  // namespace tcomp
