#include "ats/bench.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "ats/reduction.hpp"

namespace ats {
namespace bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    const auto dt = Clock::now() - t0;
    const double s = std::chrono::duration<double>(dt).count();
    return s > 0.0 ? s : 1e-9;
}

struct TimedRun {
    double elapsed_s = 0.0;
    double checksum = 0.0;
};

// shift is a known constant added to every statistic; it carries the
// compact form's offset correction and is 0 for the full matrix.
TimedRun time_evaluations(const AtsContext& ctx, const std::vector<std::vector<double>>& xs,
                          Variant variant, double shift, std::size_t warmup) {
    double sink = 0.0;
    for (std::size_t i = 0; i < warmup; ++i) {
        sink += ctx.eval(xs[i % xs.size()], variant);
    }
    volatile double warmup_guard = sink;
    (void)warmup_guard;
    TimedRun run;
    const auto t0 = Clock::now();
    for (const auto& x : xs) {
        run.checksum += ctx.eval(x, variant) + shift;
    }
    run.elapsed_s = seconds_since(t0);
    return run;
}

BenchRecord run_cell(const BenchOptions& opts, std::size_t size) {
    designs::SettingSpec spec{opts.setting, size, opts.gamma};
    BenchRecord rec;
    rec.setting = opts.setting;
    rec.size = size;
    rec.d = spec.d();
    rec.variant = opts.variant;
    rec.reps = opts.reps;
    rec.seed = opts.seed;

    const Hypothesis full = designs::setting_hypothesis(spec);

    const auto t_red0 = Clock::now();
    const ReducedHypothesis red = reduce(full);
    rec.t_reduce_s = seconds_since(t_red0);
    rec.ell = red.l_unscaled.rows();

    // Statistic inputs: one vector per replicate, drawn from the setting's
    // compound-symmetry distribution (mean 1 for Setting C).
    const std::vector<double> mean =
        (opts.setting == designs::Setting::C) ? std::vector<double>(rec.d, 1.0)
                                              : std::vector<double>();
    const DenseMatrix draws =
        designs::sample_compound_symmetry(rec.d, opts.reps, mean, opts.seed);
    std::vector<std::vector<double>> xs(opts.reps);
    for (std::size_t i = 0; i < opts.reps; ++i) {
        xs[i].assign(draws.row_ptr(i), draws.row_ptr(i) + rec.d);
    }

    AtsContext ctx_full = [&] {
        if (opts.variant == Variant::ats) return AtsContext(full.h, full.y);
        const DenseMatrix data =
            designs::sample_compound_symmetry(rec.d, rec.d + 30, mean, opts.seed + 1);
        return AtsContext(full.h, full.y, designs::sample_covariance(data));
    }();
    AtsContext ctx_compact = [&] {
        if (opts.variant == Variant::ats)
            return AtsContext(red.l_unscaled, red.y_tilde_unscaled);
        return AtsContext(red.l_unscaled, red.y_tilde_unscaled, ctx_full.sigma());
    }();

    // ATS(x,H,y) = ATS(x,L0,y0) - delta; for the standardized variants the
    // offset scales by the shared trace factors.
    double shift = 0.0;
    if (red.shift_delta != 0.0) {
        switch (opts.variant) {
            case Variant::ats: shift = -red.shift_delta; break;
            case Variant::ats_s: shift = -red.shift_delta / ctx_compact.trace_m(); break;
            case Variant::ats_f:
                shift = -red.shift_delta / ctx_compact.trace_m() *
                        (ctx_compact.trace_m() * ctx_compact.trace_m() / ctx_compact.trace_m2());
                break;
        }
    }

    const TimedRun full_run = time_evaluations(ctx_full, xs, opts.variant, 0.0, opts.warmup);
    const TimedRun compact_run = time_evaluations(ctx_compact, xs, opts.variant, shift,
                                                  opts.warmup);
    rec.t_full_s = full_run.elapsed_s;
    rec.t_compact_s = compact_run.elapsed_s;
    rec.speedup = rec.t_full_s / rec.t_compact_s;
    rec.checksum_full = full_run.checksum;
    rec.checksum_compact = compact_run.checksum;
    return rec;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchOptions& opts, std::ostream* warnings) {
    std::vector<BenchRecord> records;
    for (std::size_t size : opts.sizes) {
        try {
            records.push_back(run_cell(opts, size));
        } catch (const std::exception& e) {
            if (warnings) {
                *warnings << "warning: skipping setting " << designs::setting_name(opts.setting)
                          << " size " << size << ": " << e.what() << '\n';
            }
        }
    }
    return records;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "setting,d,ell,variant,reps,seed,t_full_s,t_compact_s,t_reduce_s,speedup,"
           "checksum_full,checksum_compact\n";
    out << std::setprecision(17);
    for (const auto& r : records) {
        out << designs::setting_name(r.setting) << ',' << r.d << ',' << r.ell << ','
            << variant_name(r.variant) << ',' << r.reps << ',' << r.seed << ',' << r.t_full_s
            << ',' << r.t_compact_s << ',' << r.t_reduce_s << ',' << r.speedup << ','
            << r.checksum_full << ',' << r.checksum_compact << '\n';
    }
}

std::vector<BenchRecord> read_bench_csv(std::istream& in) {
    std::vector<BenchRecord> records;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("bench csv: missing header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 12) {
            throw std::runtime_error("bench csv: expected 12 fields, got " +
                                     std::to_string(cells.size()));
        }
        BenchRecord r;
        r.setting = designs::parse_setting(cells[0]);
        r.d = std::stoul(cells[1]);
        r.ell = std::stoul(cells[2]);
        r.variant = parse_variant(cells[3]);
        r.reps = std::stoul(cells[4]);
        r.seed = std::stoull(cells[5]);
        r.t_full_s = std::stod(cells[6]);
        r.t_compact_s = std::stod(cells[7]);
        r.t_reduce_s = std::stod(cells[8]);
        r.speedup = std::stod(cells[9]);
        r.checksum_full = std::stod(cells[10]);
        r.checksum_compact = std::stod(cells[11]);
        records.push_back(r);
    }
    return records;
}

void write_bench_markdown(std::ostream& out, const std::vector<BenchRecord>& records) {
    std::map<designs::Setting, std::vector<const BenchRecord*>> blocks;
    for (const auto& r : records) blocks[r.setting].push_back(&r);
    for (const auto& [setting, rows] : blocks) {
        const char* param = (setting == designs::Setting::C) ? "p" : "q";
        out << "### Setting " << designs::setting_name(setting) << " ("
            << variant_name(rows.front()->variant) << ", reps=" << rows.front()->reps << ")\n\n";
        auto emit_row = [&](const std::string& head, auto value) {
            out << "| " << head << " |";
            for (const auto* r : rows) out << ' ' << value(*r) << " |";
            out << '\n';
        };
        out << "| d(" << param << ") |";
        for (const auto* r : rows) out << ' ' << r->d << '(' << r->size << ") |";
        out << '\n';
        out << "|---|";
        for (std::size_t i = 0; i < rows.size(); ++i) out << "---|";
        out << '\n';
        auto fmt = [](double v) {
            std::ostringstream s;
            s << std::fixed << std::setprecision(4) << v;
            return s.str();
        };
        emit_row("ell", [](const BenchRecord& r) { return std::to_string(r.ell); });
        emit_row("t_full_s", [&](const BenchRecord& r) { return fmt(r.t_full_s); });
        emit_row("t_compact_s", [&](const BenchRecord& r) { return fmt(r.t_compact_s); });
        emit_row("t_reduce_s", [&](const BenchRecord& r) { return fmt(r.t_reduce_s); });
        emit_row("speedup", [&](const BenchRecord& r) { return fmt(r.speedup); });
        out << '\n';
    }
}

}  // namespace bench
}  // namespace ats
