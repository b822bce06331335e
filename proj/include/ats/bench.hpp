#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ats/ats_forms.hpp"
#include "ats/designs.hpp"

namespace ats {
namespace bench {

struct BenchRecord {
    designs::Setting setting = designs::Setting::A;
    std::size_t size = 0;   // q or p; not serialized, used for table labels
    std::size_t d = 0;
    std::size_t ell = 0;
    Variant variant = Variant::ats_s;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    double t_full_s = 0.0;
    double t_compact_s = 0.0;
    double t_reduce_s = 0.0;
    double speedup = 0.0;
    double checksum_full = 0.0;
    double checksum_compact = 0.0;
};

struct BenchOptions {
    designs::Setting setting = designs::Setting::A;
    std::vector<std::size_t> sizes;
    std::size_t reps = 5000;
    std::uint64_t seed = 42;
    Variant variant = Variant::ats_s;
    double gamma = 0.0;  // Setting C offset
    std::size_t warmup = 50;
};

/// Times `reps` evaluations of the chosen ATS variant with the full
/// hypothesis matrix and with its compact reduction, on identical input
/// sequences. Only the evaluation loop is timed; construction, reduction
/// and covariance estimation are excluded (reduction time is reported in
/// its own column). Single-threaded by design. Sizes that fail to build
/// are skipped with a warning on `warnings`.
std::vector<BenchRecord> run_bench(const BenchOptions& opts, std::ostream* warnings = nullptr);

/// Columns: setting,d,ell,variant,reps,seed,t_full_s,t_compact_s,
/// t_reduce_s,speedup,checksum_full,checksum_compact.
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_bench_csv(std::istream& in);

/// One block per setting with a d(q) / d(p) header row.
void write_bench_markdown(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace bench
}  // namespace ats
