#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "blind_autocorr.hpp"
#include "bounds.hpp"
#include "harness.hpp"

namespace mocz {

namespace cli {

inline std::string read_text(const std::string& path)
{
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) fail(ErrorCode::config_error, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline nlohmann::json read_json(const std::string& path)
{
    try {
        return nlohmann::json::parse(read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::config_error, "invalid JSON in '" + path + "': " + e.what());
    }
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) fail(ErrorCode::config_error, "cannot write '" + path + "'");
    f << text;
}

// "0x.." hex (most significant bit first, K bits) or a K-long 0/1 string
inline BitWord parse_bits(const std::string& s, int K)
{
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) {
        std::uint64_t v = 0;
        try {
            std::size_t used = 0;
            v = std::stoull(s.substr(2), &used, 16);
            if (used != s.size() - 2) throw std::invalid_argument(s);
        } catch (const std::logic_error&) {
            fail(ErrorCode::config_error, "bad hex word '" + s + "'");
        }
        if (K < 64 && (v >> K) != 0) fail(ErrorCode::length_mismatch, "hex word wider than K bits");
        BitWord w;
        for (int k = K - 1; k >= 0; --k) w.bits.push_back(static_cast<std::uint8_t>((v >> k) & 1u));
        return w;
    }
    BitWord w = BitWord::from_string(s);
    if (w.size() != static_cast<std::size_t>(K))
        fail(ErrorCode::length_mismatch, "bit string length " + std::to_string(w.size()) + " != K");
    return w;
}

inline std::string signal_to_csv(std::span<const cdouble> x)
{
    std::string s;
    for (auto v : x) s += format_double(v.real()) + "," + format_double(v.imag()) + "\n";
    return s;
}

inline cvec signal_from_csv(const std::string& text)
{
    cvec x;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) fail(ErrorCode::config_error, "signal CSV lines must be 're,im'");
        x.emplace_back(parse_double(line.substr(0, comma)), parse_double(line.substr(comma + 1)));
    }
    if (x.empty()) fail(ErrorCode::config_error, "empty signal");
    return x;
}

inline nlohmann::json conjecture_table(int grid)
{
    nlohmann::json rows = nlohmann::json::array();
    for (int N = 2; N <= 16; ++N)
        for (double f : {0.25, 0.5, 0.75, 1.0}) {
            const double delta = f * std::sin(std::numbers::pi / N);
            const auto r = verify_vertex_conjecture(N, 1.0, delta, grid);
            rows.push_back({{"N", N}, {"delta", delta}, {"observed_min", r.observed_min},
                            {"conjectured_min", r.conjectured_min}, {"argmin_theta", r.argmin_theta}, {"holds", r.holds}});
        }
    return rows;
}

inline std::vector<BerCurve> sweep_rows(const nlohmann::json& sweep, int workers, std::string& csv, nlohmann::json& js)
{
    if (!sweep.is_object() || !sweep.contains("base") || !sweep.contains("grid"))
        fail(ErrorCode::config_error, "sweep needs 'base' and 'grid'");
    const auto& grid = sweep.at("grid");
    std::vector<std::pair<std::string, nlohmann::json>> axes;
    for (const auto& [k, v] : grid.items()) {
        if (!v.is_array() || v.empty()) fail(ErrorCode::config_error, "sweep axis '" + k + "' must be a non-empty array");
        axes.emplace_back(k, v);
    }
    std::vector<std::size_t> idx(axes.size(), 0);
    csv = std::string("K,radius,L,p,") + csv_header + "\n";
    js = nlohmann::json::array();
    std::vector<BerCurve> all;
    while (true) {
        nlohmann::json cfgj = sweep.at("base");
        for (std::size_t a = 0; a < axes.size(); ++a) cfgj[axes[a].first] = axes[a].second[idx[a]];
        const auto cfg = config_from_json(cfgj);
        const auto curves = run_experiment(cfg, workers);
        const std::string prefix = std::to_string(cfg.K) + "," + cfg.radius + "," + std::to_string(cfg.L) + ","
            + format_double(cfg.p) + ",";
        std::istringstream rows(curves_to_csv(curves, false));
        std::string line;
        while (std::getline(rows, line)) csv += prefix + line + "\n";
        js.push_back(curves_to_json(curves, cfg));
        all.insert(all.end(), curves.begin(), curves.end());
        std::size_t a = 0;
        for (; a < axes.size(); ++a) {
            if (++idx[a] < axes[a].second.size()) break;
            idx[a] = 0;
        }
        if (a == axes.size()) break;
    }
    return all;
}

} // namespace cli

// Exit codes: 0 ok, 2 configuration error, 3 numerical failure.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"MOCZ / Huffman BMOCZ encoder, decoders and simulation harness"};
    app.require_subcommand(1);

    std::string bits, radius = "optimal:1", out_path, cb_out, input, cb_path, decoder = "dizet";
    std::string config_path, format = "csv", delta_arg = "max", zeros_path;
    std::vector<std::string> words;
    int K = 0, workers = 1, grid = default_theta_grid;
    double p = 1.0, n0 = 0.0;
    std::uint64_t seed = 0;

    auto* enc = app.add_subcommand("encode", "encode a bit word into BMOCZ polynomial coefficients");
    enc->add_option("--bits", bits, "binary string or 0x hex word")->required();
    enc->add_option("--k", K, "number of bits K")->required();
    enc->add_option("--radius", radius, "radius R or optimal:lambda");
    enc->add_option("--out", out_path, "output CSV (re,im per coefficient)");
    enc->add_option("--codebook-out", cb_out, "also write the codebook JSON");

    auto* dec = app.add_subcommand("decode", "decode a received block");
    dec->add_option("--input", input, "received block CSV ('-' for stdin)")->required();
    dec->add_option("--codebook", cb_path, "codebook JSON");
    dec->add_option("--k", K, "number of bits K (without --codebook)");
    dec->add_option("--radius", radius, "radius R or optimal:lambda (without --codebook)");
    dec->add_option("--decoder", decoder, "rfmd, ml, dizet or dizet_dft");
    dec->add_option("--p", p, "power delay profile decay (ml)");
    dec->add_option("--n0", n0, "noise power (ml)");
    dec->add_option("--out", out_path, "output file");

    auto* sim = app.add_subcommand("simulate", "run a BER experiment from a JSON config");
    sim->add_option("--config", config_path, "experiment JSON")->required();
    auto* seed_opt = sim->add_option("--seed", seed, "override the config seed");
    sim->add_option("--workers", workers, "worker threads (MOCZ_WORKERS overrides)");
    sim->add_option("--out", out_path, "output file");
    sim->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* bnd = app.add_subcommand("bounds", "noise-robustness certificates for a codebook or zero set");
    bnd->add_option("--codebook", cb_path, "codebook JSON");
    bnd->add_option("--zeros", zeros_path, "zero-set JSON {zeros:[{re,im}], leading:{re,im}}");
    bnd->add_option("--delta", delta_arg, "'max' or a value in (0, dmin/2)");
    bnd->add_option("--word", words, "bit word(s) to certify (default: all-zero and all-one)");
    bnd->add_option("--grid", grid, "theta grid size");
    bnd->add_option("--out", out_path, "output file");

    auto* swp = app.add_subcommand("sweep", "run a grid of experiments");
    swp->add_option("--config", config_path, "sweep JSON {base:{...}, grid:{key:[...]}}")->required();
    swp->add_option("--workers", workers, "worker threads (MOCZ_WORKERS overrides)");
    swp->add_option("--out", out_path, "output file");
    swp->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*enc) {
            const auto cb = build_codebook(K, resolve_radius(radius, K));
            const auto x = encode(cli::parse_bits(bits, K), cb);
            cli::write_text(out_path, cli::signal_to_csv(x.coeffs), out);
            if (!cb_out.empty()) cli::write_text(cb_out, to_json(cb).dump(2) + "\n", out);
        } else if (*dec) {
            HuffmanCodebook cb;
            if (!cb_path.empty()) cb = codebook_from_json(cli::read_json(cb_path));
            else if (K > 0) cb = build_codebook(K, resolve_radius(radius, K));
            else fail(ErrorCode::config_error, "decode needs --codebook or --k");
            const cvec y = cli::signal_from_csv(cli::read_text(input));
            if (y.size() < cb.signal_length()) fail(ErrorCode::length_mismatch, "received block shorter than K+1");
            DecodeResult r;
            switch (decoder_from_string(decoder)) {
            case DecoderKind::rfmd: r = decode_rfmd(y, cb); break;
            case DecoderKind::dizet: r = decode_dizet(y, cb); break;
            case DecoderKind::dizet_dft: r = decode_dizet_dft(y, cb); break;
            case DecoderKind::ml: {
                const ChannelModel m{static_cast<int>(y.size()) - cb.K, p, n0};
                r = decode_ml(y, cb, ml_weighting(cb, m, Normalization::unnormalized));
                break;
            }
            }
            cli::write_text(out_path, r.word.to_string() + "\n", out);
        } else if (*sim) {
            auto cfg = config_from_json(cli::read_json(config_path));
            if (seed_opt->count() > 0) cfg.seed = seed;
            const auto curves = run_experiment(cfg, effective_workers(workers));
            cli::write_text(out_path, format == "csv" ? curves_to_csv(curves) : curves_to_json(curves, cfg).dump(2) + "\n",
                            out);
        } else if (*bnd) {
            nlohmann::json res;
            std::vector<std::pair<std::string, ZeroSet>> sets;
            if (!cb_path.empty()) {
                const auto cb = codebook_from_json(cli::read_json(cb_path));
                if (words.empty()) words = {std::string(static_cast<std::size_t>(cb.K), '0'), std::string(static_cast<std::size_t>(cb.K), '1')};
                for (const auto& w : words) sets.emplace_back(w, codeword_zero_set(cli::parse_bits(w, cb.K), cb));
                res["codebook"] = to_json(cb);
                res["packing_limit"] = packing_limit(cb.R, std::min(cb.R - 1.0 / cb.R, 2.0 / cb.R * std::sin(std::numbers::pi / cb.K)));
            } else if (!zeros_path.empty()) {
                const auto zj = cli::read_json(zeros_path);
                ZeroSet zs;
                try {
                    for (const auto& z : zj.at("zeros")) zs.zeros.push_back(complex_from_json(z));
                    if (zj.contains("leading")) zs.leading = complex_from_json(zj.at("leading"));
                } catch (const nlohmann::json::exception& e) {
                    fail(ErrorCode::config_error, e.what());
                }
                sets.emplace_back("zeros", zs);
            } else {
                fail(ErrorCode::config_error, "bounds needs --codebook or --zeros");
            }
            nlohmann::json certs = nlohmann::json::array();
            const PerturbationCertificate* worst = nullptr;
            std::vector<PerturbationCertificate> all;
            all.reserve(sets.size());
            for (const auto& [label, zs] : sets) {
                const double dmin = min_distance(zs.zeros);
                double delta = 0.0;
                if (delta_arg == "max") delta = dmin / 2.0 * (1.0 - 1e-9);
                else delta = parse_double(delta_arg);
                all.push_back(theorem2_bound(zs, delta));
                auto cj = to_json(all.back());
                cj["word"] = label;
                cj["exact_worstcase"] = exact_worstcase_bound(zs, delta, grid);
                certs.push_back(cj);
            }
            for (const auto& c : all)
                if (!worst || c.epsilon < worst->epsilon) worst = &c;
            res["epsilon"] = worst->epsilon;
            res["delta"] = worst->delta;
            res["dmin"] = worst->dmin;
            res["certificates"] = certs;
            res["vertex_conjecture"] = cli::conjecture_table(grid);
            cli::write_text(out_path, res.dump(2) + "\n", out);
        } else if (*swp) {
            std::string csv;
            nlohmann::json js;
            cli::sweep_rows(cli::read_json(config_path), effective_workers(workers), csv, js);
            cli::write_text(out_path, format == "csv" ? csv : js.dump(2) + "\n", out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.is_config() ? 2 : 3;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace mocz
