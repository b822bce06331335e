#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ats/bench.hpp"
#include "ats/designs.hpp"
#include "ats/hypothesis_io.hpp"
#include "ats/linalg.hpp"
#include "ats/reduction.hpp"

namespace {

using nlohmann::json;

std::vector<double> read_vector_csv(const std::string& path) {
    const ats::DenseMatrix m = ats::read_csv_matrix_file(path);
    if (m.rows() != 1 && m.cols() != 1) {
        throw std::runtime_error(path + ": expected a vector (one row or one column), got " +
                                 m.shape_string());
    }
    return m.data();
}

struct ReduceArgs {
    std::string input;
    std::string output = "reduced";
    bool canonical = false;
    std::vector<std::string> kron_files;
};

int run_reduce(const ReduceArgs& args) {
    // in --kron mode the hypothesis positional is free, so it doubles as
    // the output prefix
    const std::string prefix =
        (!args.kron_files.empty() && !args.input.empty()) ? args.input : args.output;
    ats::DenseMatrix l;
    std::vector<double> y_tilde;
    double scale_a = 1.0;
    double delta = 0.0;
    std::size_t m_rows = 0;
    ats::DenseMatrix source_gram;
    std::vector<double> source_hty;
    double source_y_norm = 0.0;

    if (!args.kron_files.empty()) {
        const ats::DenseMatrix w = ats::read_csv_matrix_file(args.kron_files[0]);
        const ats::DenseMatrix s = ats::read_csv_matrix_file(args.kron_files[1]);
        l = ats::kronecker_reduce(w, s);
        const ats::DenseMatrix full = ats::kronecker(w, s);
        m_rows = full.rows();
        source_gram = full.gram();
        y_tilde.assign(l.rows(), 0.0);
        source_hty.assign(full.cols(), 0.0);
    } else {
        const ats::Hypothesis hyp = ats::read_hypothesis_json_file(args.input);
        m_rows = hyp.m();
        source_gram = hyp.h.gram();
        source_hty = hyp.h.transpose_times(hyp.y);
        source_y_norm = ats::norm2(hyp.y);
        if (args.canonical) {
            if (source_y_norm != 0.0) {
                std::cerr << "error: --canonical requires y = 0\n";
                return 1;
            }
            l = ats::canonical_reduce(hyp.h);
            y_tilde.assign(l.rows(), 0.0);
        } else {
            const ats::ReducedHypothesis red = ats::reduce(hyp);
            l = red.l;
            y_tilde = red.y_tilde;
            scale_a = red.scale_a;
            delta = red.shift_delta;
        }
    }

    const double gram_residual = (scale_a * l.gram() - source_gram).frobenius_norm();
    std::vector<double> lty = l.transpose_times(y_tilde);
    double cross = 0.0;
    for (std::size_t j = 0; j < lty.size(); ++j) {
        const double dlt = scale_a * lty[j] - source_hty[j];
        cross += dlt * dlt;
    }
    const double norm_residual =
        std::fabs(source_y_norm - std::sqrt(scale_a) * ats::norm2(y_tilde));

    ats::write_csv_matrix_file(prefix + "_L.csv", l);
    {
        std::ofstream yf(prefix + "_y.csv");
        yf << std::setprecision(17);
        for (double v : y_tilde) yf << v << '\n';
    }
    json sidecar{{"ell", l.rows()},
                 {"rank", l.rows()},
                 {"a", scale_a},
                 {"delta", delta},
                 {"residuals",
                  {{"gram", gram_residual},
                   {"cross", std::sqrt(cross)},
                   {"norm", norm_residual}}}};
    std::ofstream jf(prefix + ".json");
    jf << sidecar.dump(2) << '\n';
    std::cout << m_rows << " -> " << l.rows() << '\n';
    return 0;
}

int run_check(const std::string& file1, const std::string& file2, bool as_json) {
    const ats::Hypothesis h1 = ats::read_hypothesis_json_file(file1);
    const ats::Hypothesis h2 = ats::read_hypothesis_json_file(file2);
    ats::EquivalenceReport rep;
    try {
        rep = ats::check_equivalence(h1, h2);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    if (as_json) {
        json j{{"same_gram", rep.same_gram},
               {"witness_a", rep.witness_a ? json(*rep.witness_a) : json(nullptr)},
               {"same_cross", rep.same_cross},
               {"same_norm", rep.same_norm},
               {"same_hypothesis", rep.same_hypothesis},
               {"ats_equal", rep.ats_equal},
               {"ats_s_equal", rep.ats_s_equal},
               {"ats_f_equal", rep.ats_f_equal},
               {"ats_shifted_equal", rep.ats_shifted_equal},
               {"shift_delta", rep.shift_delta},
               {"residuals",
                {{"gram", rep.gram_residual},
                 {"cross", rep.cross_residual},
                 {"norm", rep.norm_residual}}}};
        std::cout << j.dump(2) << '\n';
    } else {
        auto line = [](const char* key, const std::string& val) {
            std::cout << std::left << std::setw(20) << key << val << '\n';
        };
        auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
        std::cout << std::setprecision(12);
        line("same_gram", yn(rep.same_gram));
        line("witness_a", rep.witness_a ? std::to_string(*rep.witness_a) : "-");
        line("same_cross", yn(rep.same_cross));
        line("same_norm", yn(rep.same_norm));
        line("same_hypothesis", yn(rep.same_hypothesis));
        line("ats_equal", yn(rep.ats_equal));
        line("ats_s_equal", yn(rep.ats_s_equal));
        line("ats_f_equal", yn(rep.ats_f_equal));
        line("ats_shifted_equal", yn(rep.ats_shifted_equal));
        line("shift_delta", std::to_string(rep.shift_delta));
        line("gram_residual", std::to_string(rep.gram_residual));
        line("cross_residual", std::to_string(rep.cross_residual));
        line("norm_residual", std::to_string(rep.norm_residual));
    }
    return rep.ats_s_equal ? 0 : 3;
}

int run_ats(const std::string& hyp_file, const std::string& x_file,
            const std::string& sigma_file, const std::string& variant_name) {
    const ats::Variant variant = ats::parse_variant(variant_name);
    const ats::Hypothesis hyp = ats::read_hypothesis_json_file(hyp_file);
    const std::vector<double> x = read_vector_csv(x_file);
    if (variant != ats::Variant::ats && sigma_file.empty()) {
        std::cerr << "error: --variant " << variant_name << " requires --sigma\n";
        return 1;
    }
    const ats::AtsContext ctx =
        sigma_file.empty()
            ? ats::AtsContext(hyp.h, hyp.y)
            : ats::AtsContext(hyp.h, hyp.y, ats::read_csv_matrix_file(sigma_file));
    std::cout << std::setprecision(12) << ctx.eval(x, variant) << '\n';
    return 0;
}

int run_bench_cmd(const ats::bench::BenchOptions& opts, const std::string& format,
                  const std::string& out_path) {
    const auto records = ats::bench::run_bench(opts, &std::cerr);
    if (format == "csv") {
        ats::bench::write_bench_csv(std::cout, records);
    } else {
        ats::bench::write_bench_markdown(std::cout, records);
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open " << out_path << " for writing\n";
        return 1;
    }
    ats::bench::write_bench_csv(out, records);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hypothesis-matrix reduction and ATS evaluation"};
    app.require_subcommand(1);
    bool as_json = false;
    std::uint64_t seed = 42;
    app.add_flag("--json", as_json, "emit JSON where applicable");
    app.add_option("--seed", seed, "RNG seed");

    ReduceArgs reduce_args;
    auto* reduce_cmd = app.add_subcommand(
        "reduce", "reduce a hypothesis to its compact-root form");
    reduce_cmd->add_option("input", reduce_args.input, "hypothesis JSON file");
    reduce_cmd->add_option("output", reduce_args.output, "output prefix")->capture_default_str();
    reduce_cmd->add_flag("--canonical", reduce_args.canonical,
                         "matrix-independent reduction (homogeneous only)");
    reduce_cmd->add_option("--kron", reduce_args.kron_files,
                           "wholeplot and subplot matrix CSV files")
        ->expected(2);

    std::string check_file1, check_file2;
    auto* check_cmd = app.add_subcommand("check", "compare two hypothesis formulations");
    check_cmd->add_option("file1", check_file1)->required();
    check_cmd->add_option("file2", check_file2)->required();

    std::string ats_hyp, ats_x, ats_sigma, ats_variant = "ats";
    auto* ats_cmd = app.add_subcommand("ats", "evaluate an ATS variant");
    ats_cmd->add_option("hypothesis", ats_hyp)->required();
    ats_cmd->add_option("x", ats_x, "statistic vector CSV")->required();
    ats_cmd->add_option("--sigma", ats_sigma, "covariance CSV (ats_s/ats_f)");
    ats_cmd->add_option("--variant", ats_variant, "ats|ats_s|ats_f")->capture_default_str();

    std::string bench_setting = "A";
    std::string bench_sizes = "5,10,20";
    std::string bench_variant = "ats_s";
    std::string bench_format = "md";
    std::string bench_out = "bench.csv";
    ats::bench::BenchOptions bench_opts;
    auto* bench_cmd = app.add_subcommand("bench", "time full vs compact evaluation");
    bench_cmd->add_option("--setting", bench_setting, "A|B|C")->capture_default_str();
    bench_cmd->add_option("--sizes", bench_sizes, "comma-separated q (A/B) or p (C) values")
        ->capture_default_str();
    bench_cmd->add_option("--reps", bench_opts.reps, "evaluations per cell")
        ->capture_default_str();
    bench_cmd->add_option("--variant", bench_variant, "ats|ats_s")->capture_default_str();
    bench_cmd->add_option("--format", bench_format, "md|csv")->capture_default_str();
    bench_cmd->add_option("--gamma", bench_opts.gamma, "Setting C offset")
        ->capture_default_str();
    bench_cmd->add_option("--out", bench_out, "CSV output path")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*reduce_cmd) {
            if (reduce_args.kron_files.empty() && reduce_args.input.empty()) {
                std::cerr << "error: reduce needs an input file or --kron\n";
                return 1;
            }
            return run_reduce(reduce_args);
        }
        if (*check_cmd) return run_check(check_file1, check_file2, as_json);
        if (*ats_cmd) return run_ats(ats_hyp, ats_x, ats_sigma, ats_variant);
        if (*bench_cmd) {
            bench_opts.setting = ats::designs::parse_setting(bench_setting);
            bench_opts.variant = ats::parse_variant(bench_variant);
            bench_opts.seed = seed;
            bench_opts.sizes.clear();
            std::stringstream ss(bench_sizes);
            std::string tok;
            while (std::getline(ss, tok, ',')) bench_opts.sizes.push_back(std::stoul(tok));
            if (bench_format != "md" && bench_format != "csv") {
                std::cerr << "error: --format must be md or csv\n";
                return 1;
            }
            return run_bench_cmd(bench_opts, bench_format, bench_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
