#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "stegim/container.hpp"
#include "stegim/errors.hpp"
#include "stegim/hsrdh.hpp"
#include "stegim/image.hpp"
#include "stegim/kmeanswm.hpp"
#include "stegim/lsb.hpp"
#include "stegim/metrics.hpp"
#include "stegim/pvd.hpp"
#include "stegim/roiwm.hpp"
#include "stegim/svdwm.hpp"
#include "stegim/tamper.hpp"

namespace {

using namespace stegim;

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out)
        throw IoError("short write to '" + path + "'");
}

std::vector<int> parse_ints(const std::string& text, std::size_t n, const char* what) {
    std::vector<int> vals;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            vals.push_back(std::stoi(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) + ": bad number '" + item + "' in '" +
                                        text + "'");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    if (vals.size() != n)
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n) +
                                    " comma-separated values, got " + std::to_string(vals.size()));
    return vals;
}

Region parse_region(const std::string& text, const char* what) {
    auto v = parse_ints(text, 4, what);
    return {v[0], v[1], v[2], v[3]};
}

unsigned parse_channels(const std::string& text, const RasterImage& img) {
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
            throw std::invalid_argument("--channels accepts r/g/b combinations or 'gray', got '" +
                                        text + "'");
        }
    }
    return mask;
}

SlotOrder parse_order(const std::string& text) {
    if (text == "seq")
        return SlotOrder::sequential;
    if (text == "perm")
        return SlotOrder::permuted;
    throw std::invalid_argument("--order must be seq or perm, got '" + text + "'");
}

// Every flag of every subcommand; validation happens per scheme at run time.
struct Options {
    std::string scheme;
    std::string in_path, out_path, payload_path;
    std::string a_path, b_path;
    int bits = 1;
    std::string channels = "auto";
    std::string order = "seq";
    std::string key_hex = "0", key1_hex = "0", key2_hex = "0", seed_hex = "0";
    int rounds = 1;
    std::string sidecar, restored;
    std::string range_table = "default";
    std::string watermark_path;
    std::string roi_text;
    std::vector<std::string> roni_texts;
    std::string map_path, recovered_path;
    std::string window = "full";
    int threshold = 0;
    std::string diff_map_path;
    std::string kind;
    std::string region_text, src_text, dst_text;
    int fill_value = 0;
    double density = 0.01;
    std::uint64_t count = 1;
    std::string truth_path;
};

LsbConfig lsb_config(const Options& o, const RasterImage& img) {
    LsbConfig cfg;
    cfg.bits_per_sample = o.bits;
    cfg.channel_mask = parse_channels(o.channels, img);
    cfg.order = parse_order(o.order);
    cfg.key = StegoKey::from_hex(o.key_hex);
    return cfg;
}

RoiWatermarkSpec roi_spec(const Options& o, const RasterImage& img) {
    if (o.roi_text.empty())
        throw std::invalid_argument("--roi x,y,w,h is required for roiwm");
    RoiWatermarkSpec spec;
    spec.roi = parse_region(o.roi_text, "--roi");
    if (o.roni_texts.empty()) {
        spec.roni = default_roni(img);
    } else {
        for (const std::string& t : o.roni_texts)
            spec.roni.push_back(parse_region(t, "--roni"));
    }
    spec.key = StegoKey::from_hex(o.key_hex);
    return spec;
}

std::string default_artifact(const std::string& base, const char* suffix) {
    return base + suffix;
}

int cmd_embed(const Options& o) {
    RasterImage cover = load_image(o.in_path);
    RasterImage stego;
    std::string extra;

    if (o.scheme == "lsb" || o.scheme == "pvd" || o.scheme == "hsrdh") {
        if (o.payload_path.empty())
            throw std::invalid_argument("--payload is required for " + o.scheme);
        std::vector<std::uint8_t> payload = read_file(o.payload_path);
        if (o.scheme == "lsb") {
            LsbConfig cfg = lsb_config(o, cover);
            stego = lsb_embed(cover, payload, cfg);
            extra = "capacity_bits=" + std::to_string(lsb_capacity(cover, cfg)) +
                    "\nused_bits=" + std::to_string(kFrameHeaderBits + payload.size() * 8);
        } else if (o.scheme == "pvd") {
            RangeTable table = parse_range_table(o.range_table);
            StegoKey key = StegoKey::from_hex(o.key_hex);
            stego = pvd_embed(cover, payload, table, key);
            extra = "capacity_bits=" + std::to_string(pvd_capacity(cover, table, key)) +
                    "\nused_bits=" + std::to_string(kFrameHeaderBits + payload.size() * 8);
        } else {
            if (o.sidecar.empty())
                throw std::invalid_argument("--sidecar is required for hsrdh");
            auto [img, rec] = cover.is_gray() ? hsrdh_embed(cover, payload, o.rounds)
                                              : hsv_value_embed(cover, payload, o.rounds);
            stego = std::move(img);
            save_record(rec, o.sidecar);
            extra = "used_bits=" + std::to_string(kFrameHeaderBits + payload.size() * 8) +
                    "\nrounds=" + std::to_string(rec.rounds) + "\nsidecar=" + o.sidecar;
        }
    } else if (o.scheme == "svdwm") {
        stego = svdwm_embed(cover, StegoKey::from_hex(o.key1_hex), StegoKey::from_hex(o.key2_hex));
    } else if (o.scheme == "kmeans") {
        if (o.watermark_path.empty())
            throw std::invalid_argument("--watermark is required for kmeans");
        stego = kmwm_embed(cover, load_image(o.watermark_path), StegoKey::from_hex(o.seed_hex));
    } else if (o.scheme == "roiwm") {
        RoiWatermarkSpec spec = roi_spec(o, cover);
        stego = roiwm_embed(cover, spec);
        extra = "capacity_bits=" + std::to_string(roiwm_capacity(cover, spec));
    } else if (o.scheme == "selfhash") {
        stego = selfhash_tag(cover, StegoKey::from_hex(o.key_hex));
    } else {
        throw std::invalid_argument("unknown scheme '" + o.scheme + "'");
    }

    save_image(stego, o.out_path);
    std::cout << "status=OK\n";
    std::cout << "scheme=" << o.scheme << "\n";
    std::cout << "out=" << o.out_path << "\n";
    if (!extra.empty())
        std::cout << extra << "\n";
    std::cout << quality_report(cover, stego).to_line() << "\n";
    return 0;
}

int cmd_extract(const Options& o) {
    RasterImage stego = load_image(o.in_path);
    std::vector<std::uint8_t> payload;
    std::string extra;

    if (o.scheme == "lsb") {
        payload = lsb_extract(stego, lsb_config(o, stego));
    } else if (o.scheme == "pvd") {
        payload = pvd_extract(stego, parse_range_table(o.range_table),
                              StegoKey::from_hex(o.key_hex));
    } else if (o.scheme == "hsrdh") {
        if (o.sidecar.empty())
            throw std::invalid_argument("--sidecar is required for hsrdh");
        RecoveryRecord rec = load_record(o.sidecar);
        auto [bytes, restored] = hsrdh_extract(stego, rec);
        payload = std::move(bytes);
        if (!o.restored.empty()) {
            save_image(restored, o.restored);
            extra = "restored=" + o.restored;
        }
    } else {
        throw std::invalid_argument("scheme '" + o.scheme +
                                    "' has no extract operation; use verify");
    }

    write_file(o.out_path, payload);
    std::cout << "status=OK\n";
    std::cout << "scheme=" << o.scheme << "\n";
    std::cout << "payload_bytes=" << payload.size() << "\n";
    std::cout << "out=" << o.out_path << "\n";
    if (!extra.empty())
        std::cout << extra << "\n";
    return 0;
}

int cmd_verify(const Options& o) {
    RasterImage img = load_image(o.in_path);

    if (o.scheme == "svdwm") {
        SvdReport rep = svdwm_verify(img, StegoKey::from_hex(o.key1_hex),
                                     StegoKey::from_hex(o.key2_hex));
        bool tampered = rep.flagged > 0;
        std::cout << (tampered ? "status=TAMPERED\n" : "status=OK\n");
        std::cout << "scheme=svdwm\n";
        std::cout << "blocks=" << rep.full_blocks << " flagged=" << rep.flagged << "\n";
        int full_w = img.width / 8, full_h = img.height / 8;
        for (int by = 0; by < rep.map.grid_h; ++by)
            for (int bx = 0; bx < rep.map.grid_w; ++bx) {
                const char* st = (bx >= full_w || by >= full_h) ? "partial"
                                 : rep.map.get(bx, by)         ? "tampered"
                                                               : "ok";
                std::cout << "block " << bx << " " << by << " " << st << "\n";
            }
        std::string map_path =
            o.map_path.empty() ? default_artifact(o.in_path, ".map.pgm") : o.map_path;
        save_image(rep.map.to_image(), map_path);
        std::cout << "map=" << map_path << "\n";
        return tampered ? 1 : 0;
    }

    if (o.scheme == "kmeans") {
        if (o.watermark_path.empty())
            throw std::invalid_argument("--watermark is required for kmeans");
        TamperMap map =
            kmwm_verify(img, load_image(o.watermark_path), StegoKey::from_hex(o.seed_hex));
        KmwmSummary sum = kmwm_summarize(map);
        bool tampered = map.any();
        std::cout << (tampered ? "status=TAMPERED\n" : "status=OK\n");
        std::cout << "scheme=kmeans\n";
        std::cout << "flagged_fraction=" << sum.overall << "\n";
        std::cout << "flagged_pixels=" << map.count() << "\n";
        std::string map_path =
            o.map_path.empty() ? default_artifact(o.in_path, ".map.pgm") : o.map_path;
        save_image(map.to_image(), map_path);
        std::cout << "map=" << map_path << "\n";
        return tampered ? 1 : 0;
    }

    if (o.scheme == "roiwm") {
        RoiVerifyResult res = roiwm_verify(img, roi_spec(o, img));
        bool tampered = res.map.any();
        std::cout << (tampered ? "status=TAMPERED\n" : "status=OK\n");
        std::cout << "scheme=roiwm\n";
        std::cout << "flagged_pixels=" << res.map.count() << "\n";
        std::string map_path =
            o.map_path.empty() ? default_artifact(o.in_path, ".map.pgm") : o.map_path;
        save_image(res.map.to_image(), map_path);
        std::cout << "map=" << map_path << "\n";
        std::string rec_path = o.recovered_path.empty()
                                   ? default_artifact(o.in_path, ".roi.pgm")
                                   : o.recovered_path;
        save_image(res.recovered_roi, rec_path);
        std::cout << "recovered=" << rec_path << "\n";
        return tampered ? 1 : 0;
    }

    if (o.scheme == "selfhash") {
        SelfhashVerdict v = selfhash_check(img, StegoKey::from_hex(o.key_hex));
        if (v == SelfhashVerdict::no_tag) {
            std::cout << "status=ERROR\n";
            std::cout << "scheme=selfhash\n";
            std::cout << "verdict=NO_TAG\n";
            std::cout << "error=no hidden frame found at the keyed tag slots\n";
            return 4;
        }
        bool tampered = v == SelfhashVerdict::tampered;
        std::cout << (tampered ? "status=TAMPERED\n" : "status=OK\n");
        std::cout << "scheme=selfhash\n";
        std::cout << "verdict=" << verdict_name(v) << "\n";
        return tampered ? 1 : 0;
    }

    throw std::invalid_argument("scheme '" + o.scheme + "' has no verify operation");
}

int cmd_metrics(const Options& o) {
    RasterImage a = load_image(o.a_path);
    RasterImage b = load_image(o.b_path);
    SsimParams params;
    if (o.window == "8x8")
        params.window_8x8 = true;
    else if (o.window != "full")
        throw std::invalid_argument("--window must be full or 8x8");
    QualityReport rep = quality_report(a, b, params);
    std::cout << "status=OK\n";
    std::cout << rep.to_line() << "\n";
    if (!o.diff_map_path.empty()) {
        save_image(diff_map(a, b, o.threshold).to_image(), o.diff_map_path);
        std::cout << "diff_map=" << o.diff_map_path << "\n";
    }
    return 0;
}

int cmd_capacity(const Options& o) {
    RasterImage img = load_image(o.in_path);
    std::uint64_t bits = 0;
    std::string extra;

    if (o.scheme == "lsb") {
        bits = lsb_capacity(img, lsb_config(o, img));
    } else if (o.scheme == "pvd") {
        bits = pvd_capacity(img, parse_range_table(o.range_table),
                            StegoKey::from_hex(o.key_hex));
    } else if (o.scheme == "hsrdh") {
        IntensityHistogram h = build_histogram(img);
        bits = h.counts[h.pp1] + h.counts[h.pp2];
        extra = "pp1=" + std::to_string(h.pp1) + "\npp2=" + std::to_string(h.pp2) +
                "\nnote=first-round capacity at the global peaks";
    } else if (o.scheme == "roiwm") {
        bits = roiwm_capacity(img, roi_spec(o, img));
    } else {
        throw std::invalid_argument("capacity is not defined for scheme '" + o.scheme + "'");
    }

    std::cout << "status=OK\n";
    std::cout << "scheme=" << o.scheme << "\n";
    std::cout << "capacity_bits=" << bits << "\n";
    if (!extra.empty())
        std::cout << extra << "\n";
    return 0;
}

int cmd_attack(const Options& o) {
    RasterImage img = load_image(o.in_path);
    TamperSpec spec;
    if (o.kind == "fill") {
        spec.kind = TamperKind::region_fill;
        spec.fill_value = o.fill_value;
    } else if (o.kind == "salt-pepper") {
        spec.kind = TamperKind::salt_pepper;
        spec.density = o.density;
        spec.seed = StegoKey::from_hex(o.seed_hex);
    } else if (o.kind == "bit-flips") {
        spec.kind = TamperKind::bit_flips;
        spec.flip_count = o.count;
        spec.seed = StegoKey::from_hex(o.seed_hex);
    } else if (o.kind == "paste") {
        spec.kind = TamperKind::paste;
        if (o.src_text.empty() || o.dst_text.empty())
            throw std::invalid_argument("paste needs --src x,y,w,h and --dst x,y");
        spec.src = parse_region(o.src_text, "--src");
        auto d = parse_ints(o.dst_text, 2, "--dst");
        spec.dst_x = d[0];
        spec.dst_y = d[1];
    } else {
        throw std::invalid_argument(
            "--kind must be fill, salt-pepper, bit-flips, or paste; got '" + o.kind + "'");
    }
    if (!o.region_text.empty())
        spec.target = parse_region(o.region_text, "--region");

    auto [tampered, truth] = apply_tamper(img, spec);
    save_image(tampered, o.out_path);
    std::cout << "status=OK\n";
    std::cout << "kind=" << o.kind << "\n";
    std::cout << "changed_pixels=" << truth.count() << "\n";
    std::cout << "out=" << o.out_path << "\n";
    if (!o.truth_path.empty()) {
        save_image(truth.to_image(), o.truth_path);
        std::cout << "truth=" << o.truth_path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"image steganography and watermarking toolkit"};
    app.require_subcommand(1);

    auto add_scheme = [&](CLI::App* cmd) {
        cmd->add_option("--scheme", o.scheme, "lsb|pvd|hsrdh|svdwm|kmeans|roiwm|selfhash")
            ->required();
    };
    auto add_common_keys = [&](CLI::App* cmd) {
        cmd->add_option("--key", o.key_hex, "key as up to 16 hex digits");
        cmd->add_option("--key1", o.key1_hex, "first key (svdwm)");
        cmd->add_option("--key2", o.key2_hex, "second key (svdwm)");
        cmd->add_option("--seed", o.seed_hex, "seed (kmeans)");
    };
    auto add_lsb_flags = [&](CLI::App* cmd) {
        cmd->add_option("--bits", o.bits, "bits per sample, 1..4 (lsb)");
        cmd->add_option("--channels", o.channels, "r/g/b combination or gray (lsb)");
        cmd->add_option("--order", o.order, "seq|perm slot order (lsb)");
    };
    auto add_roi_flags = [&](CLI::App* cmd) {
        cmd->add_option("--roi", o.roi_text, "roi as x,y,w,h (roiwm)");
        cmd->add_option("--roni", o.roni_texts, "roni region x,y,w,h, repeatable (roiwm)");
    };

    CLI::App* embed = app.add_subcommand("embed", "embed a payload or watermark");
    add_scheme(embed);
    embed->add_option("--in", o.in_path, "cover image (PGM/PPM)")->required();
    embed->add_option("--out", o.out_path, "stego image output")->required();
    embed->add_option("--payload", o.payload_path, "payload file (lsb, pvd, hsrdh)");
    add_common_keys(embed);
    add_lsb_flags(embed);
    embed->add_option("--range-table", o.range_table, "default or lo-hi,... (pvd)");
    embed->add_option("--rounds", o.rounds, "enhancement rounds (hsrdh)");
    embed->add_option("--sidecar", o.sidecar, "recovery record path (hsrdh)");
    embed->add_option("--watermark", o.watermark_path, "watermark image (kmeans)");
    add_roi_flags(embed);

    CLI::App* extract = app.add_subcommand("extract", "extract an embedded payload");
    add_scheme(extract);
    extract->add_option("--in", o.in_path, "stego image")->required();
    extract->add_option("--out", o.out_path, "payload output file")->required();
    add_common_keys(extract);
    add_lsb_flags(extract);
    extract->add_option("--range-table", o.range_table, "default or lo-hi,... (pvd)");
    extract->add_option("--sidecar", o.sidecar, "recovery record path (hsrdh)");
    extract->add_option("--restored", o.restored, "write the restored cover here (hsrdh)");

    CLI::App* verify = app.add_subcommand("verify", "verify integrity / locate tampering");
    add_scheme(verify);
    verify->add_option("--in", o.in_path, "image to verify")->required();
    add_common_keys(verify);
    verify->add_option("--watermark", o.watermark_path, "watermark image (kmeans)");
    add_roi_flags(verify);
    verify->add_option("--map", o.map_path, "tamper map image output");
    verify->add_option("--recovered", o.recovered_path, "recovered roi output (roiwm)");

    CLI::App* metrics = app.add_subcommand("metrics", "image quality metrics");
    metrics->add_option("--a", o.a_path, "first image")->required();
    metrics->add_option("--b", o.b_path, "second image")->required();
    metrics->add_option("--window", o.window, "ssim window: full|8x8");
    metrics->add_option("--diff-map", o.diff_map_path, "write a difference map here");
    metrics->add_option("--threshold", o.threshold, "difference map threshold");

    CLI::App* capacity = app.add_subcommand("capacity", "embedding capacity in bits");
    add_scheme(capacity);
    capacity->add_option("--in", o.in_path, "cover image")->required();
    add_common_keys(capacity);
    add_lsb_flags(capacity);
    capacity->add_option("--range-table", o.range_table, "default or lo-hi,... (pvd)");
    add_roi_flags(capacity);

    CLI::App* attack = app.add_subcommand("attack", "simulate tampering");
    attack->add_option("--in", o.in_path, "input image")->required();
    attack->add_option("--out", o.out_path, "tampered output")->required();
    attack->add_option("--kind", o.kind, "fill|salt-pepper|bit-flips|paste")->required();
    attack->add_option("--region", o.region_text, "target region x,y,w,h (default whole image)");
    attack->add_option("--value", o.fill_value, "fill value (fill)");
    attack->add_option("--density", o.density, "pixel fraction (salt-pepper)");
    attack->add_option("--seed", o.seed_hex, "rng seed as hex");
    attack->add_option("--count", o.count, "number of bit flips (bit-flips)");
    attack->add_option("--src", o.src_text, "source region x,y,w,h (paste)");
    attack->add_option("--dst", o.dst_text, "destination x,y (paste)");
    attack->add_option("--truth", o.truth_path, "write the ground-truth map here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << "status=ERROR\n";
        std::cout << "error=" << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(embed))
            return cmd_embed(o);
        if (app.got_subcommand(extract))
            return cmd_extract(o);
        if (app.got_subcommand(verify))
            return cmd_verify(o);
        if (app.got_subcommand(metrics))
            return cmd_metrics(o);
        if (app.got_subcommand(capacity))
            return cmd_capacity(o);
        if (app.got_subcommand(attack))
            return cmd_attack(o);
        throw std::invalid_argument("no subcommand");
    } catch (const CapacityError& e) {
        std::cout << "status=ERROR\n";
        std::cout << "error=" << e.what() << "\n";
        return 3;
    } catch (const HistogramError& e) {
        std::cout << "status=ERROR\n";
        std::cout << "error=" << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cout << "status=ERROR\n";
        std::cout << "error=" << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cout << "status=ERROR\n";
        std::cout << "error=" << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cout << "status=ERROR\n";
        std::cout << "error=" << e.what() << "\n";
        return 4;
    }
}
