#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "decoders.hpp"

#ifndef MOCZ_BUILD_ID
#define MOCZ_BUILD_ID "unknown"
#endif

namespace mocz {

enum class SnrAxis { rsnr, ebn0 };

struct PilotConfig {
    int pilots = 0;         // 0: L
    int assumed_length = 0; // 0: pilots
    int data_symbols = 0;   // 0: K/2
};

struct ExperimentConfig {
    int K = 8;
    std::string radius = "optimal:1";
    int L = 1;
    double p = 1.0;
    std::vector<double> snr_grid_db;
    SnrAxis snr_axis = SnrAxis::rsnr;
    std::vector<std::string> decoders{"dizet"};
    std::vector<std::string> baselines;
    std::uint64_t trials_per_point = 1000;
    std::uint64_t seed = 1;
    std::uint64_t max_bit_errors = 1000; // 0 disables early stopping
    std::uint64_t batch_trials = 1000;
    PilotConfig pilot;
};

inline const std::array<const char*, 3> known_baselines{"bpsk_coherent_analytic", "bpsk_coherent_mc", "pilot_qpsk"};

inline double resolve_radius(const std::string& text, int K)
{
    const std::string prefix = "optimal:";
    try {
        std::size_t used = 0;
        if (text.rfind(prefix, 0) == 0) {
            const std::string rest = text.substr(prefix.size());
            const double lambda = std::stod(rest, &used);
            if (used != rest.size()) throw std::invalid_argument(text);
            return optimal_radius(K, lambda);
        }
        const double R = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return R;
    } catch (const std::logic_error&) {
        fail(ErrorCode::config_error, "bad radius text '" + text + "'");
    }
}

inline void validate(const ExperimentConfig& c)
{
    auto bad = [](const std::string& m) { fail(ErrorCode::config_error, m); };
    if (c.K < 1 || c.K > 63) bad("K must be in 1..63");
    if (c.L < 1) bad("L must be >= 1");
    if (!(c.p > 0.0 && c.p <= 1.0)) bad("p must be in (0, 1]");
    if (c.snr_grid_db.empty()) bad("snr_grid_db must not be empty");
    for (double s : c.snr_grid_db)
        if (!std::isfinite(s)) bad("snr grid entries must be finite");
    if (c.decoders.empty() && c.baselines.empty()) bad("nothing to simulate");
    for (const auto& d : c.decoders) decoder_from_string(d);
    for (const auto& b : c.baselines)
        if (std::find_if(known_baselines.begin(), known_baselines.end(), [&](const char* k) { return b == k; })
            == known_baselines.end())
            bad("unknown baseline '" + b + "'");
    if (std::find(c.decoders.begin(), c.decoders.end(), "ml") != c.decoders.end() && c.K > ml_max_K)
        fail(ErrorCode::search_budget_exceeded, "ML decoder limited to K <= 24");
    if (c.trials_per_point == 0) bad("trials_per_point must be > 0");
    if (c.batch_trials == 0) bad("batch_trials must be > 0");
    const double R = resolve_radius(c.radius, c.K);
    if (!(R > 1.0)) bad("radius must be > 1");
    if (c.pilot.pilots < 0 || c.pilot.assumed_length < 0 || c.pilot.data_symbols < 0) bad("pilot fields must be >= 0");
}

inline nlohmann::json to_json(const ExperimentConfig& c)
{
    return {{"K", c.K},
            {"radius", c.radius},
            {"L", c.L},
            {"p", c.p},
            {"snr_grid_db", c.snr_grid_db},
            {"snr_axis", c.snr_axis == SnrAxis::rsnr ? "rsnr" : "ebn0"},
            {"decoders", c.decoders},
            {"baselines", c.baselines},
            {"trials_per_point", c.trials_per_point},
            {"seed", c.seed},
            {"max_bit_errors", c.max_bit_errors},
            {"batch_trials", c.batch_trials},
            {"pilot",
             {{"pilots", c.pilot.pilots},
              {"assumed_length", c.pilot.assumed_length},
              {"data_symbols", c.pilot.data_symbols}}}};
}

inline ExperimentConfig config_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) fail(ErrorCode::config_error, "config must be a JSON object");
    static const std::vector<std::string> keys{"K", "radius", "L", "p", "snr_grid_db", "snr_axis", "decoders",
                                               "baselines", "trials_per_point", "seed", "max_bit_errors",
                                               "batch_trials", "pilot"};
    for (const auto& [k, v] : j.items())
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) fail(ErrorCode::config_error, "unknown key '" + k + "'");
    ExperimentConfig c;
    try {
        c.K = j.value("K", c.K);
        if (j.contains("radius")) {
            const auto& r = j.at("radius");
            c.radius = r.is_number() ? nlohmann::json(r.get<double>()).dump() : r.get<std::string>();
        }
        c.L = j.value("L", c.L);
        c.p = j.value("p", c.p);
        c.snr_grid_db = j.value("snr_grid_db", c.snr_grid_db);
        const std::string axis = j.value("snr_axis", std::string("rsnr"));
        if (axis == "rsnr") c.snr_axis = SnrAxis::rsnr;
        else if (axis == "ebn0") c.snr_axis = SnrAxis::ebn0;
        else fail(ErrorCode::config_error, "snr_axis must be rsnr or ebn0");
        c.decoders = j.value("decoders", c.decoders);
        c.baselines = j.value("baselines", c.baselines);
        c.trials_per_point = j.value("trials_per_point", c.trials_per_point);
        c.seed = j.value("seed", c.seed);
        c.max_bit_errors = j.value("max_bit_errors", c.max_bit_errors);
        c.batch_trials = j.value("batch_trials", c.batch_trials);
        if (j.contains("pilot")) {
            const auto& pj = j.at("pilot");
            c.pilot.pilots = pj.value("pilots", 0);
            c.pilot.assumed_length = pj.value("assumed_length", 0);
            c.pilot.data_symbols = pj.value("data_symbols", 0);
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::config_error, e.what());
    }
    validate(c);
    return c;
}

struct BerPoint {
    double snr_db = 0.0;
    std::uint64_t bits_sent = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    double ci_halfwidth = 0.0;
    double wall_time_s = 0.0;
};

struct BerCurve {
    std::string name;
    std::vector<BerPoint> points;
};

// 95% Wilson score interval half-width
inline double wilson_halfwidth(std::uint64_t errors, std::uint64_t n, double z = 1.959963984540054)
{
    if (n == 0) return 0.0;
    const double nn = static_cast<double>(n);
    const double ph = static_cast<double>(errors) / nn;
    return z / (1.0 + z * z / nn) * std::sqrt(ph * (1.0 - ph) / nn + z * z / (4.0 * nn * nn));
}

inline double bpsk_flatfading_analytic(double snr) { return 0.5 * (1.0 - std::sqrt(snr / (1.0 + snr))); }

struct PilotLayout {
    int pilots;
    int assumed_length;
    int data_symbols;
};

inline PilotLayout resolve_pilot(const PilotConfig& pc, int K, int L)
{
    PilotLayout p{pc.pilots > 0 ? pc.pilots : L, 0, pc.data_symbols > 0 ? pc.data_symbols : std::max(1, K / 2)};
    p.assumed_length = pc.assumed_length > 0 ? pc.assumed_length : p.pilots;
    return p;
}

inline cdouble qpsk_symbol(bool b0, bool b1)
{
    constexpr double a = 0.70710678118654752440;
    return {b0 ? a : -a, b1 ? a : -a};
}

// pilot symbols: fixed QPSK pattern
inline cdouble pilot_symbol(int n) { return qpsk_symbol(true, (n % 3) != 1); }

// One pilot-QPSK block: LS channel estimate from pilot-only rows, ZF by least squares.
// Returns the decided bits (2 per data symbol).
inline std::vector<std::uint8_t> pilot_qpsk_receive(std::span<const cdouble> y, const PilotLayout& lay)
{
    const int P = lay.pilots, La = lay.assumed_length, D = lay.data_symbols;
    if (P < La) fail(ErrorCode::underdetermined_estimate, "fewer pilots than assumed channel taps");
    const int W = P + D + La - 1;
    if (static_cast<int>(y.size()) != W) fail(ErrorCode::length_mismatch, "pilot block length mismatch");

    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(P, La);
    Eigen::VectorXcd yp(P);
    for (int n = 0; n < P; ++n) {
        yp(n) = y[static_cast<std::size_t>(n)];
        for (int l = 0; l < La && l <= n; ++l) T(n, l) = pilot_symbol(n - l);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(T);
    if (qr.rank() < La) fail(ErrorCode::underdetermined_estimate, "pilot system rank deficient");
    const Eigen::VectorXcd h = qr.solve(yp);

    Eigen::VectorXcd r(W);
    for (int n = 0; n < W; ++n) r(n) = y[static_cast<std::size_t>(n)];
    for (int n = 0; n < P; ++n)
        for (int l = 0; l < La; ++l) r(n + l) -= h(l) * pilot_symbol(n);
    Eigen::MatrixXcd Td = Eigen::MatrixXcd::Zero(W, D);
    for (int d = 0; d < D; ++d)
        for (int l = 0; l < La; ++l) Td(P + d + l, d) = h(l);
    const Eigen::VectorXcd s = Td.colPivHouseholderQr().solve(r);
    std::vector<std::uint8_t> bits(2 * static_cast<std::size_t>(D));
    for (int d = 0; d < D; ++d) {
        bits[2 * static_cast<std::size_t>(d)] = s(d).real() > 0.0;
        bits[2 * static_cast<std::size_t>(d) + 1] = s(d).imag() > 0.0;
    }
    return bits;
}

// stream purposes within a trial
enum class Purpose : std::uint64_t { word = 0, channel = 1, noise = 2, qpsk_data = 3, qpsk_noise = 4, bpsk = 5 };

inline std::uint64_t stream_id(std::uint64_t trial, Purpose p) { return (trial << 3) | static_cast<std::uint64_t>(p); }

namespace detail {

struct Tally {
    std::vector<std::uint64_t> errors;
    std::vector<std::uint64_t> bits;
    std::vector<double> seconds;
    explicit Tally(std::size_t n) : errors(n, 0), bits(n, 0), seconds(n, 0.0) {}
};

enum class Job { decoder, bpsk_mc, pilot_qpsk };

struct PointContext {
    const ExperimentConfig* cfg;
    const HuffmanCodebook* cb;
    const std::vector<cvec>* table; // codewords, empty when K > 16
    ChannelModel model;             // N0 set for this point
    double qpsk_N0;
    double bpsk_N0;
    PilotLayout pilot;
    const MlWeighting* ml;
    std::vector<Job> jobs;
    std::vector<DecoderKind> kinds;
};

inline std::uint64_t count_errors(const BitWord& a, const BitWord& b)
{
    std::uint64_t e = 0;
    for (std::size_t k = 0; k < a.size(); ++k) e += a.bits[k] != b.bits[k];
    return e;
}

inline void run_trials(const PointContext& ctx, const std::vector<char>& active, std::uint64_t begin,
                       std::uint64_t end, Tally& t)
{
    using clock = std::chrono::steady_clock;
    const auto& cfg = *ctx.cfg;
    const auto& cb = *ctx.cb;
    const bool need_bmocz = std::any_of(ctx.jobs.begin(), ctx.jobs.end(), [&](Job j) { return j == Job::decoder; });
    for (std::uint64_t trial = begin; trial < end; ++trial) {
        RngStream rw(cfg.seed, stream_id(trial, Purpose::word));
        RngStream rc(cfg.seed, stream_id(trial, Purpose::channel));
        RngStream rn(cfg.seed, stream_id(trial, Purpose::noise));
        BitWord m;
        m.bits.resize(static_cast<std::size_t>(cb.K));
        for (auto& b : m.bits) b = rw.bit();
        const ChannelRealization h = sample_channel(ctx.model, rc);
        cvec y;
        if (need_bmocz) {
            const cvec x = ctx.table->empty() ? encode(m, cb).coeffs : (*ctx.table)[m.to_integer()];
            y = channel_output(x, h, ctx.model);
            const double s = std::sqrt(ctx.model.N0);
            for (auto& v : y) v += s * rn.complex_gaussian(1.0);
        }
        for (std::size_t j = 0; j < ctx.jobs.size(); ++j) {
            if (!active[j]) continue;
            const auto t0 = clock::now();
            switch (ctx.jobs[j]) {
            case Job::decoder: {
                DecodeResult r;
                switch (ctx.kinds[j]) {
                case DecoderKind::rfmd: r = decode_rfmd(y, cb); break;
                case DecoderKind::ml: r = decode_ml(y, cb, *ctx.ml); break;
                case DecoderKind::dizet: r = decode_dizet(y, cb); break;
                case DecoderKind::dizet_dft: r = decode_dizet_dft(y, cb); break;
                }
                t.errors[j] += count_errors(r.word, m);
                t.bits[j] += static_cast<std::uint64_t>(cb.K);
                break;
            }
            case Job::bpsk_mc: {
                RngStream rb(cfg.seed, stream_id(trial, Purpose::bpsk));
                const double s = std::sqrt(ctx.bpsk_N0);
                for (int k = 0; k < cb.K; ++k) {
                    const bool b = rb.bit();
                    const cdouble g = rb.complex_gaussian(1.0);
                    const cdouble r = g * (b ? 1.0 : -1.0) + s * rb.complex_gaussian(1.0);
                    const bool dec = (std::conj(g) * r).real() > 0.0;
                    t.errors[j] += dec != b;
                }
                t.bits[j] += static_cast<std::uint64_t>(cb.K);
                break;
            }
            case Job::pilot_qpsk: {
                const auto& lay = ctx.pilot;
                RngStream rd(cfg.seed, stream_id(trial, Purpose::qpsk_data));
                RngStream rq(cfg.seed, stream_id(trial, Purpose::qpsk_noise));
                std::vector<std::uint8_t> bits(2 * static_cast<std::size_t>(lay.data_symbols));
                for (auto& b : bits) b = rd.bit();
                cvec s(static_cast<std::size_t>(lay.pilots + lay.data_symbols));
                for (int n = 0; n < lay.pilots; ++n) s[static_cast<std::size_t>(n)] = pilot_symbol(n);
                for (int d = 0; d < lay.data_symbols; ++d)
                    s[static_cast<std::size_t>(lay.pilots + d)] =
                        qpsk_symbol(bits[2 * static_cast<std::size_t>(d)], bits[2 * static_cast<std::size_t>(d) + 1]);
                cvec full = linear_convolve(s, h.taps);
                const double g = 1.0 / std::sqrt(ctx.model.expected_energy());
                const std::size_t W = static_cast<std::size_t>(lay.pilots + lay.data_symbols + lay.assumed_length - 1);
                cvec yq(W, cdouble{0.0, 0.0});
                const double sn = std::sqrt(ctx.qpsk_N0);
                for (std::size_t n = 0; n < W; ++n) {
                    if (n < full.size()) yq[n] = g * full[n];
                    yq[n] += sn * rq.complex_gaussian(1.0);
                }
                const auto dec = pilot_qpsk_receive(yq, lay);
                for (std::size_t b = 0; b < bits.size(); ++b) t.errors[j] += dec[b] != bits[b];
                t.bits[j] += bits.size();
                break;
            }
            }
            t.seconds[j] += std::chrono::duration<double>(clock::now() - t0).count();
        }
    }
}

} // namespace detail

inline int effective_workers(int requested)
{
    if (const char* env = std::getenv("MOCZ_WORKERS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::logic_error&) {
        }
    }
    return std::max(1, requested);
}

// Curves in config order: decoders, then baselines. Results do not depend on workers.
inline std::vector<BerCurve> run_experiment(const ExperimentConfig& cfg, int workers = 1)
{
    validate(cfg);
    workers = std::max(1, workers);
    const auto cb = build_codebook(cfg.K, resolve_radius(cfg.radius, cfg.K));
    const int N = cfg.K + cfg.L;
    std::vector<cvec> table;
    if (cfg.K <= 16) {
        const std::uint64_t count = std::uint64_t{1} << cfg.K;
        table.reserve(count);
        for (std::uint64_t v = 0; v < count; ++v) table.push_back(encode(BitWord::from_integer(v, cfg.K), cb).coeffs);
    }

    detail::PointContext ctx{};
    ctx.cfg = &cfg;
    ctx.cb = &cb;
    ctx.table = &table;
    std::vector<std::string> names;
    bool analytic = false;
    for (const auto& d : cfg.decoders) {
        ctx.jobs.push_back(detail::Job::decoder);
        ctx.kinds.push_back(decoder_from_string(d));
        names.push_back(d);
    }
    for (const auto& b : cfg.baselines) {
        if (b == "bpsk_coherent_analytic") {
            analytic = true;
            continue;
        }
        ctx.jobs.push_back(b == "bpsk_coherent_mc" ? detail::Job::bpsk_mc : detail::Job::pilot_qpsk);
        ctx.kinds.push_back(DecoderKind::dizet);
        names.push_back(b);
    }
    ctx.pilot = resolve_pilot(cfg.pilot, cfg.K, cfg.L);
    const double qpsk_eb = static_cast<double>(ctx.pilot.pilots + ctx.pilot.data_symbols) / (2.0 * ctx.pilot.data_symbols);

    std::vector<BerCurve> curves(names.size());
    for (std::size_t j = 0; j < names.size(); ++j) curves[j].name = names[j];
    BerCurve analytic_curve{"bpsk_coherent_analytic", {}};

    for (double snr_db : cfg.snr_grid_db) {
        const double v = db_to_linear(snr_db);
        const double snr = cfg.snr_axis == SnrAxis::rsnr ? v : snr_from_ebn0(v, cfg.K, N);
        const double ebn0 = cfg.snr_axis == SnrAxis::rsnr ? ebn0_from_snr(v, cfg.K, N) : v;
        ctx.model = ChannelModel{cfg.L, cfg.p, 1.0 / snr};
        ctx.qpsk_N0 = qpsk_eb / ebn0;
        ctx.bpsk_N0 = 1.0 / v; // BPSK: one bit per symbol, SNR and Eb/N0 coincide
        MlWeighting ml;
        if (std::find(cfg.decoders.begin(), cfg.decoders.end(), "ml") != cfg.decoders.end()) {
            ml = ml_weighting(cb, ctx.model);
            ctx.ml = &ml;
        }

        std::vector<char> active(ctx.jobs.size(), 1);
        detail::Tally total(ctx.jobs.size());
        for (std::uint64_t start = 0; start < cfg.trials_per_point; start += cfg.batch_trials) {
            if (std::none_of(active.begin(), active.end(), [](char a) { return a != 0; })) break;
            const std::uint64_t stop = std::min(cfg.trials_per_point, start + cfg.batch_trials);
            const std::uint64_t n = stop - start;
            const auto nw = static_cast<std::uint64_t>(std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), n));
            std::vector<detail::Tally> parts(nw, detail::Tally(ctx.jobs.size()));
            if (nw == 1) {
                detail::run_trials(ctx, active, start, stop, parts[0]);
            } else {
                std::vector<std::exception_ptr> errs(nw);
                std::vector<std::thread> pool;
                for (std::uint64_t w = 0; w < nw; ++w) {
                    const std::uint64_t b = start + n * w / nw, e = start + n * (w + 1) / nw;
                    pool.emplace_back([&, w, b, e] {
                        try {
                            detail::run_trials(ctx, active, b, e, parts[w]);
                        } catch (...) {
                            errs[w] = std::current_exception();
                        }
                    });
                }
                for (auto& th : pool) th.join();
                for (auto& e : errs)
                    if (e) std::rethrow_exception(e);
            }
            for (const auto& part : parts)
                for (std::size_t j = 0; j < ctx.jobs.size(); ++j) {
                    total.errors[j] += part.errors[j];
                    total.bits[j] += part.bits[j];
                    total.seconds[j] += part.seconds[j];
                }
            if (cfg.max_bit_errors > 0)
                for (std::size_t j = 0; j < ctx.jobs.size(); ++j)
                    if (total.errors[j] >= cfg.max_bit_errors) active[j] = 0;
        }
        for (std::size_t j = 0; j < ctx.jobs.size(); ++j) {
            BerPoint pt;
            pt.snr_db = snr_db;
            pt.bits_sent = total.bits[j];
            pt.bit_errors = total.errors[j];
            pt.ber = pt.bits_sent ? static_cast<double>(pt.bit_errors) / static_cast<double>(pt.bits_sent) : 0.0;
            pt.ci_halfwidth = wilson_halfwidth(pt.bit_errors, pt.bits_sent);
            pt.wall_time_s = total.seconds[j];
            curves[j].points.push_back(pt);
        }
        if (analytic) {
            BerPoint pt;
            pt.snr_db = snr_db;
            pt.ber = bpsk_flatfading_analytic(v);
            analytic_curve.points.push_back(pt);
        }
        ctx.ml = nullptr;
    }
    if (analytic) {
        // keep config order among baselines
        std::size_t pos = cfg.decoders.size();
        for (const auto& b : cfg.baselines) {
            if (b == "bpsk_coherent_analytic") break;
            ++pos;
        }
        curves.insert(curves.begin() + static_cast<std::ptrdiff_t>(pos), analytic_curve);
    }
    return curves;
}

inline std::string format_double(double v)
{
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

inline double parse_double(const std::string& s)
{
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) fail(ErrorCode::config_error, "bad number '" + s + "'");
    return v;
}

inline const char* csv_header = "snr_db,decoder,bits_sent,bit_errors,ber,ber_ci_halfwidth,wall_time_s";

// rows ordered by SNR point, then curve order
inline std::string curves_to_csv(const std::vector<BerCurve>& curves, bool with_header = true)
{
    std::ostringstream os;
    if (with_header) os << csv_header << '\n';
    const std::size_t npts = curves.empty() ? 0 : curves.front().points.size();
    for (std::size_t i = 0; i < npts; ++i)
        for (const auto& c : curves) {
            const auto& p = c.points[i];
            os << format_double(p.snr_db) << ',' << c.name << ',' << p.bits_sent << ',' << p.bit_errors << ','
               << format_double(p.ber) << ',' << format_double(p.ci_halfwidth) << ',' << format_double(p.wall_time_s)
               << '\n';
        }
    return os.str();
}

inline std::vector<BerCurve> curves_from_csv(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != csv_header) fail(ErrorCode::config_error, "unexpected CSV header");
    std::vector<BerCurve> curves;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        if (f.size() != 7) fail(ErrorCode::config_error, "CSV row needs 7 fields");
        auto it = std::find_if(curves.begin(), curves.end(), [&](const BerCurve& c) { return c.name == f[1]; });
        if (it == curves.end()) {
            curves.push_back({f[1], {}});
            it = curves.end() - 1;
        }
        BerPoint p;
        p.snr_db = parse_double(f[0]);
        p.bits_sent = std::stoull(f[2]);
        p.bit_errors = std::stoull(f[3]);
        p.ber = parse_double(f[4]);
        p.ci_halfwidth = parse_double(f[5]);
        p.wall_time_s = parse_double(f[6]);
        it->points.push_back(p);
    }
    return curves;
}

inline nlohmann::json curves_to_json(const std::vector<BerCurve>& curves, const ExperimentConfig& cfg)
{
    nlohmann::json out;
    out["build"] = MOCZ_BUILD_ID;
    out["seed"] = cfg.seed;
    out["config"] = to_json(cfg);
    out["curves"] = nlohmann::json::array();
    for (const auto& c : curves) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : c.points)
            pts.push_back({{"snr_db", p.snr_db},
                           {"bits_sent", p.bits_sent},
                           {"bit_errors", p.bit_errors},
                           {"ber", p.ber},
                           {"ber_ci_halfwidth", p.ci_halfwidth},
                           {"wall_time_s", p.wall_time_s}});
        out["curves"].push_back({{"decoder", c.name}, {"points", pts}});
    }
    return out;
}

inline std::vector<BerCurve> curves_from_json(const nlohmann::json& j)
{
    std::vector<BerCurve> curves;
    for (const auto& c : j.at("curves")) {
        BerCurve bc{c.at("decoder").get<std::string>(), {}};
        for (const auto& p : c.at("points"))
            bc.points.push_back({p.at("snr_db").get<double>(), p.at("bits_sent").get<std::uint64_t>(),
                                 p.at("bit_errors").get<std::uint64_t>(), p.at("ber").get<double>(),
                                 p.at("ber_ci_halfwidth").get<double>(), p.at("wall_time_s").get<double>()});
        curves.push_back(std::move(bc));
    }
    return curves;
}

} // namespace mocz
