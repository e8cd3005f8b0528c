#include "stegim/lzw.hpp"

#include <unordered_map>

namespace stegim {

namespace {

constexpr int kFirstCode = 256;
constexpr int kMaxEntries = 1 << 16; // table frozen here, never reset
constexpr int kMinWidth = 9;
constexpr int kMaxWidth = 16;

// Width covering next_code: starts at 9, steps up when next_code reaches
// 2^width, capped at 16.
int width_for(int next_code) {
    int w = kMinWidth;
    while (w < kMaxWidth && next_code >= (1 << w)) ++w;
    return w;
}

class BitPacker {
public:
    void put(std::uint32_t value, int width) {
        for (int i = width - 1; i >= 0; --i) {
            acc_ = (acc_ << 1) | ((value >> i) & 1u);
            if (++nbits_ == 8) {
                out_.push_back(static_cast<std::uint8_t>(acc_));
                acc_ = 0;
                nbits_ = 0;
            }
        }
    }
    std::vector<std::uint8_t> finish() {
        if (nbits_ > 0) out_.push_back(static_cast<std::uint8_t>(acc_ << (8 - nbits_)));
        return std::move(out_);
    }

private:
    std::vector<std::uint8_t> out_;
    std::uint32_t acc_ = 0;
    int nbits_ = 0;
};

class BitUnpacker {
public:
    BitUnpacker(const std::uint8_t* data, std::size_t len) : data_(data), len_(len) {}

    std::uint32_t get(int width) {
        std::uint32_t v = 0;
        for (int i = 0; i < width; ++i) {
            std::size_t byte = pos_ >> 3;
            if (byte >= len_)
                throw LzwError("truncated stream: final code cut short at bit " +
                               std::to_string(pos_));
            v = (v << 1) | ((data_[byte] >> (7 - (pos_ & 7))) & 1u);
            ++pos_;
        }
        return v;
    }

private:
    const std::uint8_t* data_;
    std::size_t len_;
    std::size_t pos_ = 0;
};

struct PairHash {
    std::size_t operator()(const std::pair<int, std::uint8_t>& p) const {
        return (static_cast<std::size_t>(p.first) << 8) | p.second;
    }
};

} // namespace

std::vector<std::uint8_t> lzw_compress(const std::vector<std::uint8_t>& data) {
    std::unordered_map<std::pair<int, std::uint8_t>, int, PairHash> table;
    table.reserve(data.size() < kMaxEntries ? data.size() : kMaxEntries);
    int next_code = kFirstCode;
    BitPacker packer;
    std::uint32_t count = 0;
    int w = -1; // current match, as a code; -1 = empty

    auto emit = [&](int code) {
        packer.put(static_cast<std::uint32_t>(code), width_for(next_code));
        ++count;
    };

    for (std::uint8_t c : data) {
        if (w < 0) {
            w = c;
            continue;
        }
        auto it = table.find({w, c});
        if (it != table.end()) {
            w = it->second;
        } else {
            emit(w);
            if (next_code < kMaxEntries) table[{w, c}] = next_code++;
            w = c;
        }
    }
    if (w >= 0) emit(w);

    std::vector<std::uint8_t> out;
    out.push_back(static_cast<std::uint8_t>(count >> 24));
    out.push_back(static_cast<std::uint8_t>(count >> 16));
    out.push_back(static_cast<std::uint8_t>(count >> 8));
    out.push_back(static_cast<std::uint8_t>(count));
    auto packed = packer.finish();
    out.insert(out.end(), packed.begin(), packed.end());
    return out;
}

std::vector<std::uint8_t> lzw_decompress(const std::vector<std::uint8_t>& stream) {
    if (stream.size() < 4)
        throw LzwError("truncated stream: missing code-count header");
    std::uint32_t count = (static_cast<std::uint32_t>(stream[0]) << 24) |
                          (static_cast<std::uint32_t>(stream[1]) << 16) |
                          (static_cast<std::uint32_t>(stream[2]) << 8) |
                          static_cast<std::uint32_t>(stream[3]);
    BitUnpacker bits(stream.data() + 4, stream.size() - 4);

    // Entries above 255 as (prefix code, appended byte); first_byte memoized
    // for the cScSc case.
    std::vector<std::pair<int, std::uint8_t>> entries;
    std::vector<std::uint8_t> first_byte;
    entries.reserve(1024);
    first_byte.reserve(1024);
    auto table_size = [&] { return kFirstCode + static_cast<int>(entries.size()); };
    auto head = [&](int code) {
        return code < kFirstCode ? static_cast<std::uint8_t>(code)
                                 : first_byte[code - kFirstCode];
    };

    std::vector<std::uint8_t> out;
    // Mirrors the encoder's next_code at each emission so widths stay in sync
    // (the decoder's own table lags one entry behind).
    int writer_next = kFirstCode;
    int prev = -1;

    for (std::uint32_t i = 0; i < count; ++i) {
        int code = static_cast<int>(bits.get(width_for(writer_next)));
        if (writer_next < kMaxEntries) ++writer_next;

        std::size_t start = out.size();
        if (code < table_size()) {
            // materialize by walking the prefix chain, then reverse in place
            int c = code;
            while (c >= kFirstCode) {
                out.push_back(entries[c - kFirstCode].second);
                c = entries[c - kFirstCode].first;
            }
            out.push_back(static_cast<std::uint8_t>(c));
            for (std::size_t a = start, b = out.size() - 1; a < b; ++a, --b)
                std::swap(out[a], out[b]);
        } else if (code == table_size() && prev >= 0) {
            // cScSc: the code names the entry being built from prev
            std::uint8_t h = head(prev);
            int c = prev;
            std::size_t mark = out.size();
            while (c >= kFirstCode) {
                out.push_back(entries[c - kFirstCode].second);
                c = entries[c - kFirstCode].first;
            }
            out.push_back(static_cast<std::uint8_t>(c));
            for (std::size_t a = mark, b = out.size() - 1; a < b; ++a, --b)
                std::swap(out[a], out[b]);
            out.push_back(h);
        } else {
            throw LzwError("invalid code " + std::to_string(code) + " at position " +
                           std::to_string(i) + ": table has " +
                           std::to_string(table_size()) + " entries");
        }

        if (prev >= 0 && table_size() < kMaxEntries) {
            entries.emplace_back(prev, out[start]);
            first_byte.push_back(head(prev));
        }
        prev = code;
    }
    return out;
}

} // namespace stegim
