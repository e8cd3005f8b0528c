#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stegim {

// Base for all library failures that are not plain usage errors.
// Usage/precondition violations throw std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed image file. Carries the byte offset where parsing gave up.
class ImageFormatError : public Error {
public:
    struct Verbatim {};
    ImageFormatError(const std::string& msg, std::size_t byte_offset)
        : Error(msg + " (byte offset " + std::to_string(byte_offset) + ")"),
          offset(byte_offset) {}
    ImageFormatError(Verbatim, const std::string& msg, std::size_t byte_offset)
        : Error(msg), offset(byte_offset) {}
    std::size_t offset;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Payload does not fit the carrier. Reports needed vs available bits.
class CapacityError : public Error {
public:
    CapacityError(std::uint64_t needed_bits, std::uint64_t available_bits)
        : Error("capacity exceeded: needed=" + std::to_string(needed_bits) +
                " available=" + std::to_string(available_bits) + " bits"),
          needed(needed_bits), available(available_bits) {}
    CapacityError(const std::string& msg, std::uint64_t needed_bits,
                  std::uint64_t available_bits)
        : Error(msg + ": needed=" + std::to_string(needed_bits) +
                " available=" + std::to_string(available_bits) + " bits"),
          needed(needed_bits), available(available_bits) {}
    std::uint64_t needed;
    std::uint64_t available;
};

// Payload frame failures, each distinct so callers can tell
// "no hidden frame" apart from "frame present but damaged".
enum class FrameFault {
    bad_magic,        // no hidden frame
    bad_version,
    bad_length,       // declared length exceeds available bits
    bad_crc,          // payload corrupted
    wrong_scheme,
};

class FrameError : public Error {
public:
    FrameError(FrameFault f, const std::string& msg) : Error(msg), fault(f) {}
    FrameFault fault;
};

class LzwError : public Error {
public:
    explicit LzwError(const std::string& msg) : Error(msg) {}
};

// Fewer than two usable histogram bins; nothing can be embedded.
class HistogramError : public Error {
public:
    explicit HistogramError(const std::string& msg) : Error(msg) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

// Sidecar record disagrees with the image it is applied to.
class RecordMismatchError : public Error {
public:
    explicit RecordMismatchError(const std::string& msg) : Error(msg) {}
};

} // namespace stegim
