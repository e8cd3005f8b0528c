#include <cstdint>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stegim/container.hpp"
#include "stegim/errors.hpp"
#include "stegim/hsrdh.hpp"
#include "stegim/image.hpp"
#include "stegim/keystream.hpp"
#include "stegim/kmeanswm.hpp"
#include "stegim/lsb.hpp"
#include "stegim/lzw.hpp"
#include "stegim/metrics.hpp"
#include "stegim/pvd.hpp"
#include "stegim/roiwm.hpp"
#include "stegim/svdwm.hpp"
#include "stegim/tamper.hpp"

namespace py = pybind11;
using namespace stegim;

namespace {

std::vector<std::uint8_t> to_bytes(const py::bytes& b) {
    std::string s = b;
    return {s.begin(), s.end()};
}

py::bytes from_bytes(const std::vector<std::uint8_t>& v) {
    return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

unsigned parse_channel_mask(const std::string& text, const RasterImage& img) {
    if (text == "auto")
        return img.is_gray() ? kChanGray : kChanG;
    if (text == "gray")
        return kChanGray;
    unsigned mask = 0;
    for (char c : text) {
        switch (c) {
        case 'r': mask |= kChanR; break;
        case 'g': mask |= kChanG; break;
        case 'b': mask |= kChanB; break;
        default:
            throw std::invalid_argument("channels must be r/g/b letters or 'gray', got '" +
                                        text + "'");
        }
    }
    return mask;
}

LsbConfig make_lsb_config(const RasterImage& img, int bits, const std::string& channels,
                          const std::string& order, std::uint64_t key) {
    LsbConfig cfg;
    cfg.bits_per_sample = bits;
    cfg.channel_mask = parse_channel_mask(channels, img);
    if (order == "seq")
        cfg.order = SlotOrder::sequential;
    else if (order == "perm")
        cfg.order = SlotOrder::permuted;
    else
        throw std::invalid_argument("order must be 'seq' or 'perm', got '" + order + "'");
    cfg.key = StegoKey{key};
    return cfg;
}

Region tuple_region(const std::tuple<int, int, int, int>& t) {
    return Region{std::get<0>(t), std::get<1>(t), std::get<2>(t), std::get<3>(t)};
}

RoiWatermarkSpec make_roi_spec(const RasterImage& img, const std::tuple<int, int, int, int>& roi,
                               std::uint64_t key,
                               const std::optional<std::vector<std::tuple<int, int, int, int>>>& roni) {
    RoiWatermarkSpec spec;
    spec.roi = tuple_region(roi);
    if (roni) {
        for (const auto& t : *roni)
            spec.roni.push_back(tuple_region(t));
    } else {
        spec.roni = default_roni(img);
    }
    spec.key = StegoKey{key};
    return spec;
}

RasterImage image_from_buffer(const py::buffer& buf) {
    py::buffer_info info = buf.request();
    if (info.format != py::format_descriptor<std::uint8_t>::format())
        throw std::invalid_argument("expected a uint8 buffer");
    int h, w, ch;
    if (info.ndim == 2) {
        h = static_cast<int>(info.shape[0]);
        w = static_cast<int>(info.shape[1]);
        ch = 1;
    } else if (info.ndim == 3) {
        h = static_cast<int>(info.shape[0]);
        w = static_cast<int>(info.shape[1]);
        ch = static_cast<int>(info.shape[2]);
    } else {
        throw std::invalid_argument("expected a (h,w) or (h,w,channels) buffer");
    }
    if (ch != 1 && ch != 3)
        throw std::invalid_argument("channel count must be 1 or 3");
    RasterImage img(w, h, ch);
    auto* src = static_cast<const std::uint8_t*>(info.ptr);
    std::size_t row_bytes = static_cast<std::size_t>(w) * ch;
    for (int y = 0; y < h; ++y) {
        const std::uint8_t* row = src + y * info.strides[0];
        if (info.ndim == 2 || (info.strides[1] == ch && (info.ndim < 3 || info.strides[2] == 1))) {
            std::memcpy(&img.samples[static_cast<std::size_t>(y) * row_bytes], row, row_bytes);
        } else {
            for (int x = 0; x < w; ++x)
                for (int c = 0; c < ch; ++c)
                    img.at(x, y, c) = row[x * info.strides[1] + (info.ndim == 3 ? c * info.strides[2] : 0)];
        }
    }
    return img;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "image steganography and watermarking toolkit";

    py::register_exception<Error>(m, "StegimError");

    py::class_<RasterImage>(m, "Image", py::buffer_protocol())
        .def(py::init<int, int, int, std::uint8_t>(), py::arg("width"), py::arg("height"),
             py::arg("channels") = 1, py::arg("fill") = 0)
        .def(py::init(&image_from_buffer), py::arg("array"))
        .def_readonly("width", &RasterImage::width)
        .def_readonly("height", &RasterImage::height)
        .def_readonly("channels", &RasterImage::channels)
        .def("get",
             [](const RasterImage& i, int x, int y, int c) { return i.at(x, y, c); },
             py::arg("x"), py::arg("y"), py::arg("channel") = 0)
        .def("set",
             [](RasterImage& i, int x, int y, int v, int c) {
                 i.at(x, y, c) = static_cast<std::uint8_t>(v);
             },
             py::arg("x"), py::arg("y"), py::arg("value"), py::arg("channel") = 0)
        .def("tobytes",
             [](const RasterImage& i) { return from_bytes(i.samples); })
        .def("save", [](const RasterImage& i, const std::string& path) { save_image(i, path); },
             py::arg("path"))
        .def_static("load", [](const std::string& path) { return load_image(path); },
                    py::arg("path"))
        .def_buffer([](RasterImage& i) {
            return py::buffer_info(
                i.samples.data(), sizeof(std::uint8_t),
                py::format_descriptor<std::uint8_t>::format(), 3,
                {static_cast<py::ssize_t>(i.height), static_cast<py::ssize_t>(i.width),
                 static_cast<py::ssize_t>(i.channels)},
                {static_cast<py::ssize_t>(i.width) * i.channels,
                 static_cast<py::ssize_t>(i.channels), py::ssize_t{1}});
        })
        .def("__eq__", [](const RasterImage& a, const RasterImage& b) { return a == b; })
        .def("__repr__", [](const RasterImage& i) {
            return "<Image " + std::to_string(i.width) + "x" + std::to_string(i.height) + "x" +
                   std::to_string(i.channels) + ">";
        });

    py::class_<TamperMap>(m, "TamperMap")
        .def_readonly("grid_w", &TamperMap::grid_w)
        .def_readonly("grid_h", &TamperMap::grid_h)
        .def_readonly("cell", &TamperMap::cell)
        .def("get", &TamperMap::get, py::arg("x"), py::arg("y"))
        .def("count", &TamperMap::count)
        .def("any", &TamperMap::any)
        .def("to_image", &TamperMap::to_image);

    // lsb
    m.def("lsb_capacity",
          [](const RasterImage& img, int bits, const std::string& channels,
             const std::string& order, std::uint64_t key) {
              return lsb_capacity(img, make_lsb_config(img, bits, channels, order, key));
          },
          py::arg("image"), py::arg("bits") = 1, py::arg("channels") = "auto",
          py::arg("order") = "seq", py::arg("key") = 0);
    m.def("lsb_embed",
          [](const RasterImage& img, const py::bytes& payload, int bits,
             const std::string& channels, const std::string& order, std::uint64_t key) {
              return lsb_embed(img, to_bytes(payload),
                               make_lsb_config(img, bits, channels, order, key));
          },
          py::arg("image"), py::arg("payload"), py::arg("bits") = 1,
          py::arg("channels") = "auto", py::arg("order") = "seq", py::arg("key") = 0);
    m.def("lsb_extract",
          [](const RasterImage& img, int bits, const std::string& channels,
             const std::string& order, std::uint64_t key) {
              return from_bytes(
                  lsb_extract(img, make_lsb_config(img, bits, channels, order, key)));
          },
          py::arg("image"), py::arg("bits") = 1, py::arg("channels") = "auto",
          py::arg("order") = "seq", py::arg("key") = 0);

    // pvd
    m.def("pvd_capacity",
          [](const RasterImage& img, std::uint64_t key, const std::string& table) {
              return pvd_capacity(img, parse_range_table(table), StegoKey{key});
          },
          py::arg("image"), py::arg("key") = 0, py::arg("table") = "default");
    m.def("pvd_embed",
          [](const RasterImage& img, const py::bytes& payload, std::uint64_t key,
             const std::string& table) {
              return pvd_embed(img, to_bytes(payload), parse_range_table(table), StegoKey{key});
          },
          py::arg("image"), py::arg("payload"), py::arg("key") = 0,
          py::arg("table") = "default");
    m.def("pvd_extract",
          [](const RasterImage& img, std::uint64_t key, const std::string& table) {
              return from_bytes(pvd_extract(img, parse_range_table(table), StegoKey{key}));
          },
          py::arg("image"), py::arg("key") = 0, py::arg("table") = "default");

    // hsrdh
    py::class_<RecoveryRecord>(m, "RecoveryRecord")
        .def_readonly("pp1", &RecoveryRecord::pp1)
        .def_readonly("pp2", &RecoveryRecord::pp2)
        .def_readonly("rounds", &RecoveryRecord::rounds)
        .def_property_readonly("mode",
                               [](const RecoveryRecord& r) {
                                   return r.mode == ChannelMode::gray ? "gray" : "hsv";
                               })
        .def("save", [](const RecoveryRecord& r, const std::string& path) {
            save_record(r, path);
        }, py::arg("path"))
        .def_static("load", [](const std::string& path) { return load_record(path); },
                    py::arg("path"));
    m.def("hsrdh_embed",
          [](const RasterImage& img, const py::bytes& payload, int rounds,
             const std::string& mode) {
              std::pair<RasterImage, RecoveryRecord> r;
              if (mode == "auto")
                  r = img.is_gray() ? hsrdh_embed(img, to_bytes(payload), rounds)
                                    : hsv_value_embed(img, to_bytes(payload), rounds);
              else if (mode == "gray")
                  r = hsrdh_embed(img, to_bytes(payload), rounds);
              else if (mode == "hsv")
                  r = hsv_value_embed(img, to_bytes(payload), rounds);
              else
                  throw std::invalid_argument("mode must be auto, gray, or hsv");
              return r;
          },
          py::arg("image"), py::arg("payload"), py::arg("rounds") = 1,
          py::arg("mode") = "auto");
    m.def("hsrdh_extract",
          [](const RasterImage& img, const RecoveryRecord& rec) {
              auto [payload, restored] = hsrdh_extract(img, rec);
              return py::make_tuple(from_bytes(payload), restored);
          },
          py::arg("image"), py::arg("record"));

    // svd fragile watermark
    py::class_<SvdReport>(m, "SvdReport")
        .def_readonly("map", &SvdReport::map)
        .def_readonly("full_blocks", &SvdReport::full_blocks)
        .def_readonly("flagged", &SvdReport::flagged)
        .def_readonly("partial_right", &SvdReport::partial_right)
        .def_readonly("partial_bottom", &SvdReport::partial_bottom);
    m.def("svdwm_embed",
          [](const RasterImage& img, std::uint64_t key1, std::uint64_t key2) {
              return svdwm_embed(img, StegoKey{key1}, StegoKey{key2});
          },
          py::arg("image"), py::arg("key1"), py::arg("key2"));
    m.def("svdwm_verify",
          [](const RasterImage& img, std::uint64_t key1, std::uint64_t key2) {
              return svdwm_verify(img, StegoKey{key1}, StegoKey{key2});
          },
          py::arg("image"), py::arg("key1"), py::arg("key2"));

    // k-means watermark
    m.def("kmwm_embed",
          [](const RasterImage& cover, const RasterImage& watermark, std::uint64_t seed) {
              return kmwm_embed(cover, watermark, StegoKey{seed});
          },
          py::arg("cover"), py::arg("watermark"), py::arg("seed") = 0);
    m.def("kmwm_verify",
          [](const RasterImage& stego, const RasterImage& watermark, std::uint64_t seed) {
              return kmwm_verify(stego, watermark, StegoKey{seed});
          },
          py::arg("stego"), py::arg("watermark"), py::arg("seed") = 0);

    // roi watermark
    m.def("roiwm_capacity",
          [](const RasterImage& img, const std::tuple<int, int, int, int>& roi,
             std::uint64_t key,
             const std::optional<std::vector<std::tuple<int, int, int, int>>>& roni) {
              return roiwm_capacity(img, make_roi_spec(img, roi, key, roni));
          },
          py::arg("image"), py::arg("roi"), py::arg("key") = 0, py::arg("roni") = py::none());
    m.def("roiwm_embed",
          [](const RasterImage& img, const std::tuple<int, int, int, int>& roi,
             std::uint64_t key,
             const std::optional<std::vector<std::tuple<int, int, int, int>>>& roni) {
              return roiwm_embed(img, make_roi_spec(img, roi, key, roni));
          },
          py::arg("image"), py::arg("roi"), py::arg("key") = 0, py::arg("roni") = py::none());
    m.def("roiwm_verify",
          [](const RasterImage& img, const std::tuple<int, int, int, int>& roi,
             std::uint64_t key,
             const std::optional<std::vector<std::tuple<int, int, int, int>>>& roni) {
              RoiVerifyResult r = roiwm_verify(img, make_roi_spec(img, roi, key, roni));
              return py::make_tuple(r.map, r.recovered_roi);
          },
          py::arg("image"), py::arg("roi"), py::arg("key") = 0, py::arg("roni") = py::none());

    // selfhash
    m.def("selfhash_tag",
          [](const RasterImage& img, std::uint64_t key) {
              return selfhash_tag(img, StegoKey{key});
          },
          py::arg("image"), py::arg("key") = 0);
    m.def("selfhash_check",
          [](const RasterImage& img, std::uint64_t key) {
              return std::string(verdict_name(selfhash_check(img, StegoKey{key})));
          },
          py::arg("image"), py::arg("key") = 0);

    // lzw
    m.def("lzw_compress",
          [](const py::bytes& data) { return from_bytes(lzw_compress(to_bytes(data))); },
          py::arg("data"));
    m.def("lzw_decompress",
          [](const py::bytes& data) { return from_bytes(lzw_decompress(to_bytes(data))); },
          py::arg("data"));

    // metrics
    m.def("mse", [](const RasterImage& a, const RasterImage& b) { return mse(a, b); },
          py::arg("a"), py::arg("b"));
    m.def("psnr",
          [](const RasterImage& a, const RasterImage& b) -> py::object {
              auto p = psnr(a, b);
              if (!p)
                  return py::none();
              return py::float_(*p);
          },
          py::arg("a"), py::arg("b"));
    m.def("ssim",
          [](const RasterImage& a, const RasterImage& b, bool window_8x8) {
              SsimParams p;
              p.window_8x8 = window_8x8;
              return ssim(a, b, p);
          },
          py::arg("a"), py::arg("b"), py::arg("window_8x8") = false);
    m.def("quality_line",
          [](const RasterImage& a, const RasterImage& b) {
              return quality_report(a, b).to_line();
          },
          py::arg("a"), py::arg("b"));
}
