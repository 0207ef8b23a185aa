// Copyright 2026 The swq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success, 1 well-formed input with a
// negative verdict, 2 usage or I/O error.

#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swq/io.hpp"
#include "swq/swq.hpp"

namespace swq::cli {

inline constexpr int kOk = 0;
inline constexpr int kRejected = 1;
inline constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline BipartiteDims parse_dims(const std::string& s) {
    const auto x = s.find_first_of("xX");
    if (x == std::string::npos) throw UsageError("--dims must look like AxB, got '" + s + "'");
    try {
        std::size_t pa = 0, pb = 0;
        const long a = std::stol(s.substr(0, x), &pa);
        const long b = std::stol(s.substr(x + 1), &pb);
        if (pa != x || pb != s.size() - x - 1 || a < 1 || b < 1) throw std::invalid_argument(s);
        return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
    } catch (const std::logic_error&) {
        throw UsageError("--dims must look like AxB with positive integers, got '" + s + "'");
    }
}

inline std::vector<std::size_t> parse_ladder(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(item, &pos);
            if (pos != item.size() || v < 1) throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::logic_error&) {
            throw UsageError("--samples must be a comma-separated list of positive integers");
        }
    }
    if (out.empty()) throw UsageError("--samples is empty");
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes to --out when given, else to the provided stream.
inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write '" + out_path + "'");
    f << text;
    if (!f) throw UsageError("write to '" + out_path + "' failed");
}

// Least-squares slope of log(err) against log(samples).
inline double loglog_slope(const std::vector<std::size_t>& samples, const std::vector<double>& err) {
    const std::size_t m = samples.size();
    if (m < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = std::log(static_cast<double>(samples[i])), y = std::log(err[i]);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double d = static_cast<double>(m) * sxx - sx * sx;
    return d == 0.0 ? 0.0 : (static_cast<double>(m) * sxy - sx * sy) / d;
}

struct ReconstructRow {
    std::size_t samples;
    double frobenius_error;  // RMS over replicates of |estimate - rho|_F
    double norm_error;       // RMS over replicates of |int W - tr rho|
};

struct ReconstructTable {
    std::size_t n = 0;
    double exact_residual = 0.0;
    std::vector<ReconstructRow> rows;
    double slope = 0.0;
};

// Replicate r at ladder step i uses child_seed(child_seed(seed, i), r + 1);
// the state and kernel spectrum come from seed itself.
inline ReconstructTable reconstruct_table(std::size_t n, const std::vector<std::size_t>& ladder, std::size_t replicates,
                                          Seed seed) {
    ReconstructTable t;
    t.n = n;
    const DensityMatrix rho = random_density(n, child_seed(seed, 0xfeed));
    const KernelSpectrum spec = solve_kernel_spectrum(n, selector::Random{child_seed(seed, 0xbeef)});
    t.exact_residual = (reconstruct_exact(rho, spec) - rho.mat()).norm();
    std::vector<double> errs;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        double se = 0.0, sn = 0.0;
        for (std::size_t r = 0; r < replicates; ++r) {
            const Seed s = child_seed(child_seed(seed, i), r + 1);
            const double e = (reconstruct_mc(rho, spec, ladder[i], s) - rho.mat()).norm();
            const double ne = integrate_wigner_mc(rho, spec, ladder[i], s) - 1.0;
            se += e * e;
            sn += ne * ne;
        }
        const double rms = std::sqrt(se / static_cast<double>(replicates));
        t.rows.push_back({ladder[i], rms, std::sqrt(sn / static_cast<double>(replicates))});
        errs.push_back(rms);
    }
    t.slope = loglog_slope(ladder, errs);
    return t;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stratonovich-Weyl kernels, composite constraints and two-qubit moduli scans", "swq"};
    app.require_subcommand(1);

    std::size_t n = 0;
    std::string dims_str;
    Seed seed = kDefaultSeed;
    double tol = 1e-10;
    std::string out_path;
    std::string format = "json";
    std::string samples_str = "1000,10000,100000";
    std::size_t replicates = 1;
    std::string selector_str = "canonical";
    std::string state_path, kernel_path, keep_str;
    bool composite = false, identity_orbit = false, zero_params = false;
    std::vector<double> range{-std::numbers::pi, std::numbers::pi};
    double level = kPrintedQuadricLevel;
    std::string input_path;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--seed", seed, "RNG seed")->capture_default_str();
        c->add_option("--tol", tol, "admissibility tolerance")->capture_default_str();
        c->add_option("--out", out_path, "output file (default: stdout)");
        c->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    };

    auto* kernel = app.add_subcommand("kernel", "elementary and composite kernels");
    kernel->require_subcommand(1);
    auto* kgen = kernel->add_subcommand("gen", "generate a kernel and report its invariants");
    kgen->add_option("--n", n, "system dimension");
    kgen->add_option("--dims", dims_str, "bipartition AxB (with --composite)");
    kgen->add_flag("--composite", composite, "build a composite kernel");
    kgen->add_option("--selector", selector_str, "spectrum representative")
        ->check(CLI::IsMember({"canonical", "random"}))
        ->capture_default_str();
    kgen->add_flag("--identity", identity_orbit, "take the orbit point U = I");
    add_common(kgen);

    auto* kverify = kernel->add_subcommand("verify", "check the master equations of a matrix file");
    kverify->add_option("input", input_path, "matrix JSON")->required();
    kverify->add_option("--n", n, "expected dimension");
    add_common(kverify);

    auto* comp = app.add_subcommand("composite", "composite-system constraints");
    comp->require_subcommand(1);
    auto* cverify = comp->add_subcommand("verify", "check the composite master equations of a matrix file");
    cverify->add_option("input", input_path, "matrix JSON")->required();
    cverify->add_option("--dims", dims_str, "bipartition AxB")->required();
    add_common(cverify);

    auto* wig = app.add_subcommand("wigner", "Wigner function values");
    wig->require_subcommand(1);
    auto* weval = wig->add_subcommand("eval", "evaluate W = tr(rho D)");
    weval->add_option("--n", n, "dimension for generated inputs");
    weval->add_option("--state", state_path, "density matrix JSON (default: random state)");
    weval->add_option("--kernel", kernel_path, "kernel JSON (default: random orbit point)");
    weval->add_option("--dims", dims_str, "bipartition AxB for subsystem values");
    weval->add_option("--keep", keep_str, "subsystem A or B")->check(CLI::IsMember({"A", "B"}));
    add_common(weval);

    auto* rec = app.add_subcommand("reconstruct", "Monte-Carlo state reconstruction convergence table");
    rec->add_option("--n", n, "system dimension");
    rec->add_option("--samples", samples_str, "comma-separated sample ladder")->capture_default_str();
    rec->add_option("--replicates", replicates, "independent runs per ladder step")->capture_default_str();
    add_common(rec);

    auto* mod = app.add_subcommand("moduli", "two-qubit moduli space");
    mod->require_subcommand(1);
    auto* scan = mod->add_subcommand("scan", "scan the sphere/ellipsoid bundle");
    scan->add_option("--n", n, "number of records");
    scan->add_flag("--zero-params", zero_params, "use a = a' = 0 for every record");
    scan->add_option("--range", range, "parameter box lo,hi")->expected(2)->delimiter(',');
    scan->add_option("--level", level, "right-hand side of the ellipsoid equations")->capture_default_str();
    add_common(scan);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "swq: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (kgen->parsed()) {
            if (format != "json") throw UsageError("kernel gen writes JSON only");
            json report;
            if (composite) {
                const BipartiteDims d = dims_str.empty() ? BipartiteDims{2, 2} : parse_dims(dims_str);
                if (n != 0 && n != d.total()) throw UsageError("--n does not match --dims");
                if (d.n_a < 2 || d.n_b < 2) throw UsageError("composite kernels need n_a, n_b >= 2");
                const CompositeKernel k = make_composite_kernel(d, seed);
                report = kernel_report_json(k.mat(), tol);
                report["composite"] = composite_report_json(verify_composite_master(k.mat(), d, tol), tol);
            } else {
                if (n == 0) n = 2;
                if (n < 2) throw UsageError("--n must be >= 2");
                const KernelSpectrum spec = selector_str == "random"
                                                ? solve_kernel_spectrum(n, selector::Random{child_seed(seed, 1)})
                                                : solve_kernel_spectrum(n);
                const ComplexMatrix u = identity_orbit ? identity(n) : haar_unitary(n, child_seed(seed, 2));
                report = kernel_report_json(kernel_from_spectrum(spec, u).mat(), tol);
            }
            emit(report.dump(2) + "\n", out_path, out);
            return kOk;
        }

        if (kverify->parsed() || cverify->parsed()) {
            ComplexMatrix x;
            try {
                x = parse_matrix_document(read_file(input_path));
            } catch (const FormatError& e) {
                throw UsageError(input_path + ": " + e.what());
            }
            json report;
            bool ok = false;
            if (kverify->parsed()) {
                if (n != 0 && n != dim(x)) throw UsageError("matrix dimension does not match --n");
                report = kernel_report_json(x, tol);
                ok = report["admissible"].get<bool>();
            } else {
                const BipartiteDims d = parse_dims(dims_str);
                if (d.total() != dim(x)) throw UsageError("matrix dimension does not match --dims");
                const CompositeReport r = verify_composite_master(x, d, tol);
                report = composite_report_json(r, tol);
                ok = r.admissible(tol);
            }
            emit(report.dump(2) + "\n", out_path, out);
            return ok ? kOk : kRejected;
        }

        if (weval->parsed()) {
            ComplexMatrix rho_m, delta_m;
            try {
                if (!state_path.empty()) rho_m = parse_matrix_document(read_file(state_path));
                if (!kernel_path.empty()) delta_m = parse_matrix_document(read_file(kernel_path));
            } catch (const FormatError& e) {
                throw UsageError(e.what());
            }
            std::optional<BipartiteDims> d;
            if (!dims_str.empty()) d = parse_dims(dims_str);
            std::size_t size = n;
            if (size == 0) size = rho_m.size() ? dim(rho_m) : delta_m.size() ? dim(delta_m) : d ? d->total() : 2;
            if (rho_m.size() == 0) rho_m = random_density(size, child_seed(seed, 3)).mat();
            if (delta_m.size() == 0) {
                if (d) {
                    delta_m = make_composite_kernel(*d, child_seed(seed, 4)).mat();
                } else {
                    delta_m = kernel_from_spectrum(solve_kernel_spectrum(size), haar_unitary(size, child_seed(seed, 4)))
                                  .mat();
                }
            }
            json report;
            try {
                const DensityMatrix rho(rho_m);
                const SWKernel delta(delta_m);
                const WignerValue w = wigner_value(rho, delta);
                report = {{"n", delta.n()}, {"w", w.w}, {"imag", w.imag}};
                if (d) {
                    if (keep_str.empty()) keep_str = "A";
                    const CompositeKernel ck(delta, *d);
                    const Subsystem keep = keep_str == "A" ? Subsystem::A : Subsystem::B;
                    const WignerValue ws = subsystem_wigner(rho, ck, keep);
                    const WignerValue we = subsystem_wigner_embedded(rho, ck, keep);
                    report["subsystem"] = {
                        {"keep", keep_str}, {"w", ws.w}, {"w_embedded", we.w}, {"path_difference", std::abs(ws.w - we.w)}};
                }
            } catch (const CompositeConstraintError& e) {
                err << "swq: " << e.what() << '\n';
                return kRejected;
            } catch (const std::invalid_argument& e) {
                err << "swq: " << e.what() << '\n';
                return kRejected;
            }
            emit(report.dump(2) + "\n", out_path, out);
            return kOk;
        }

        if (rec->parsed()) {
            if (n == 0) n = 4;
            if (n < 2) throw UsageError("--n must be >= 2");
            if (replicates < 1) throw UsageError("--replicates must be >= 1");
            const ReconstructTable t = reconstruct_table(n, parse_ladder(samples_str), replicates, seed);
            std::ostringstream os;
            if (format == "csv") {
                os << "samples,frobenius_error,norm_error\n";
                for (const auto& r : t.rows)
                    os << r.samples << ',' << format_double(r.frobenius_error) << ',' << format_double(r.norm_error)
                       << '\n';
            } else {
                json rows = json::array();
                for (const auto& r : t.rows)
                    rows.push_back({{"samples", r.samples},
                                    {"frobenius_error", r.frobenius_error},
                                    {"norm_error", r.norm_error}});
                const json j = {{"n", t.n},
                                {"exact_residual", t.exact_residual},
                                {"replicates", replicates},
                                {"rows", rows},
                                {"loglog_slope", t.slope}};
                os << j.dump(2) << '\n';
            }
            emit(os.str(), out_path, out);
            return kOk;
        }

        if (scan->parsed()) {
            ScanConfig cfg;
            cfg.n = n == 0 ? 1 : n;
            cfg.seed = seed;
            cfg.lo = range.at(0);
            cfg.hi = range.at(1);
            cfg.zero_params = zero_params;
            cfg.level = level;
            if (!(cfg.lo <= cfg.hi)) throw UsageError("--range must satisfy lo <= hi");
            const auto records = moduli_scan(cfg);
            std::ostringstream os;
            if (format == "csv") {
                write_scan_csv(os, records);
            } else {
                os << scan_json(records).dump(2) << '\n';
            }
            emit(os.str(), out_path, out);
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "swq: " << e.what() << '\n';
        return kUsage;
    } catch (const DimensionError& e) {
        err << "swq: " << e.what() << '\n';
        return kUsage;
    }
    err << "swq: no command\n";
    return kUsage;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(std::move(args), out, err);
}

}  // namespace swq::cli
