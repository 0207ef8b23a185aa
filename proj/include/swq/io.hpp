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

// JSON and CSV encodings.
//
// Matrix:     {"dim": n, "data": [[re, im], ...]}   n*n pairs, row-major
// Kernel:     {"n", "spectrum", "trace_residual", "purity_residual",
//              "hermitian", ...}
// Composite:  {"dims": [n_a, n_b], "eq6": {...}, "eq8_a", "eq8_b",
//              "admissible"}
// Scan CSV:   see kScanColumns

#pragma once

#include <array>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "swq/composite.hpp"
#include "swq/fano.hpp"
#include "swq/kernel.hpp"
#include "swq/scan.hpp"

namespace swq {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline json matrix_to_json(const ComplexMatrix& x) {
    require_square(x, "matrix_to_json");
    json data = json::array();
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j) data.push_back({x(i, j).real(), x(i, j).imag()});
    return {{"dim", x.rows()}, {"data", std::move(data)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("data"))
        throw FormatError("matrix: expected an object with \"dim\" and \"data\"");
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1)
        throw FormatError("matrix: \"dim\" must be a positive integer");
    const auto n = static_cast<Eigen::Index>(j["dim"].get<long long>());
    const json& data = j["data"];
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != n * n)
        throw FormatError("matrix: \"data\" must hold dim*dim [re, im] pairs");
    ComplexMatrix x(n, n);
    for (Eigen::Index k = 0; k < n * n; ++k) {
        const json& e = data[static_cast<std::size_t>(k)];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw FormatError("matrix: entry " + std::to_string(k) + " is not a [re, im] pair");
        x(k / n, k % n) = Complex(e[0].get<double>(), e[1].get<double>());
    }
    return x;
}

// Accepts a bare matrix or any report carrying one under "matrix".
inline ComplexMatrix parse_matrix_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("matrix")) return matrix_from_json(j["matrix"]);
    return matrix_from_json(j);
}

inline json master_report_json(const MasterReport& r) {
    return {{"hermitian", r.hermitian},
            {"hermitian_defect", r.hermitian_defect},
            {"trace_residual", r.trace_residual},
            {"purity_residual", r.purity_residual}};
}

inline json kernel_report_json(const ComplexMatrix& x, double tol) {
    const std::size_t n = dim(x);
    const MasterReport r = verify_master(x, n, tol);
    json j = master_report_json(r);
    j["n"] = n;
    const KernelSpectrum spec = KernelSpectrum::unchecked([&] {
        const RealVector ev = hermitian_eigenvalues(hermitian_part(x));
        return std::vector<double>(ev.data(), ev.data() + ev.size());
    }());
    j["spectrum"] = spec.values();
    // the moduli point on the raw eigenvalue sphere and on S_{N-2}(1)
    j["traceless_norm"] = spec.traceless_norm();
    const RealVector dir = spec.unit_direction();
    j["unit_direction"] = std::vector<double>(dir.data(), dir.data() + dir.size());
    j["admissible"] = r.admissible(tol);
    j["matrix"] = matrix_to_json(x);
    return j;
}

inline json composite_report_json(const CompositeReport& r, double tol) {
    return {{"dims", {r.dims.n_a, r.dims.n_b}},
            {"eq6", master_report_json(r.eq6)},
            {"eq8_a", r.eq8_a},
            {"eq8_b", r.eq8_b},
            {"admissible", r.admissible(tol)}};
}

inline json block_norms_json(const BlockNorms& b) {
    return {{"eta_a_sq", b.local_a}, {"eta_b_sq", b.local_b}, {"tr_EEt", b.corr}};
}

inline json convention_report_json(const TwoQubitConstraints& c) {
    return {{"pinned_convention", "HS2"},
            {"elementary_S", {{"HS2", c.elementary_s_hs2}, {"HS4", c.elementary_s_hs4}}},
            {"measured", {{"HS2", block_norms_json(c.measured_hs2)}, {"HS4", block_norms_json(c.measured_hs4)}}},
            {"derived_targets", {{"HS2", block_norms_json(c.target_hs2)}, {"HS4", block_norms_json(c.target_hs4)}}},
            {"printed_targets", block_norms_json(c.printed)},
            {"printed_matches_HS2", c.printed_matches_hs2()},
            {"printed_matches_HS4", c.printed_matches_hs4()},
            {"matrix_level",
             {{"trace_residual", c.trace_residual},
              {"purity_residual", c.purity_residual},
              {"eq8_a", c.eq8_a},
              {"eq8_b", c.eq8_b}}}};
}

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline const std::vector<std::string>& scan_columns() {
    static const std::vector<std::string> cols{
        "record_index", "a1",    "a2",    "a3",    "ap1",     "ap2",            "ap3",         "rank_A",
        "rank_B",       "eigA1", "eigA2", "eigA3", "eigB1",   "eigB2",          "eigB3",       "rootsAB",
        "classification", "n_solutions", "solutions"};
    return cols;
}

namespace detail {

template <class It, class F>
std::string join(It first, It last, const char* sep, F&& fmt) {
    std::string out;
    for (It it = first; it != last; ++it) {
        if (it != first) out += sep;
        out += fmt(*it);
    }
    return out;
}

inline std::string format_root(const std::complex<double>& r) {
    if (r.imag() == 0.0) return format_double(r.real());
    return format_double(r.real()) + (r.imag() < 0 ? "-" : "+") + format_double(std::abs(r.imag())) + "i";
}

inline std::string format_triple(const Eigen::Vector3d& v) {
    return format_double(v(0)) + " " + format_double(v(1)) + " " + format_double(v(2));
}

}  // namespace detail

inline std::vector<std::string> scan_row(const ScanRecord& r) {
    std::vector<std::string> row;
    row.push_back(std::to_string(r.index));
    for (double v : r.a) row.push_back(format_double(v));
    for (double v : r.a_prime) row.push_back(format_double(v));
    row.push_back(std::to_string(r.roots.rank_a));
    row.push_back(std::to_string(r.roots.rank_b));
    for (int i = 0; i < 3; ++i) row.push_back(format_double(r.roots.eig_a(i)));
    for (int i = 0; i < 3; ++i) row.push_back(format_double(r.roots.eig_b(i)));
    row.push_back(detail::join(r.roots.roots_ab.begin(), r.roots.roots_ab.end(), ";", detail::format_root));
    row.push_back(to_string(r.roots.classification));
    row.push_back(std::to_string(r.solutions.size()));
    row.push_back(detail::join(r.solutions.begin(), r.solutions.end(), ";", detail::format_triple));
    return row;
}

inline void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
    const auto& cols = scan_columns();
    os << detail::join(cols.begin(), cols.end(), ",", [](const std::string& s) { return s; }) << '\n';
    for (const auto& r : records) {
        const auto row = scan_row(r);
        os << detail::join(row.begin(), row.end(), ",", [](const std::string& s) { return s; }) << '\n';
    }
}

inline json scan_record_json(const ScanRecord& r) {
    json j;
    j["record_index"] = r.index;
    j["a1"] = r.a[0], j["a2"] = r.a[1], j["a3"] = r.a[2];
    j["ap1"] = r.a_prime[0], j["ap2"] = r.a_prime[1], j["ap3"] = r.a_prime[2];
    j["rank_A"] = r.roots.rank_a;
    j["rank_B"] = r.roots.rank_b;
    for (int i = 0; i < 3; ++i) {
        j["eigA" + std::to_string(i + 1)] = r.roots.eig_a(i);
        j["eigB" + std::to_string(i + 1)] = r.roots.eig_b(i);
    }
    json roots = json::array();
    for (const auto& z : r.roots.roots_ab) roots.push_back({z.real(), z.imag()});
    j["rootsAB"] = std::move(roots);
    j["classification"] = to_string(r.roots.classification);
    j["n_solutions"] = r.solutions.size();
    json sols = json::array();
    for (const auto& mu : r.solutions) sols.push_back({mu(0), mu(1), mu(2)});
    j["solutions"] = std::move(sols);
    return j;
}

inline json scan_json(const std::vector<ScanRecord>& records) {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(scan_record_json(r));
    return arr;
}

}  // namespace swq
