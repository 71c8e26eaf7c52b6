#include "stiefel/retract.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "stiefel/error.hpp"
#include "stiefel/ktheory.hpp"

namespace stiefel::retract {

namespace {

using json = json_codec::json;

std::vector<int> exponent_range(int lo, int hi) {
    std::vector<int> out;
    for (int i = lo; i < hi; ++i) out.push_back(i);
    return out;
}

// Shared assembly for the reduced and full systems. Each Adams block is
// multiplied by `scale`, which models the k*psi^k variant.
LinearSystem assemble(const RetractProblem& p, bool reduced, const std::vector<Integer>& scales) {
    const int n = p.n, s = p.s, t = p.t;
    const int free_cols = reduced ? s - t : n - t;
    LinearSystem sys;
    for (int r = s; r < n; ++r)
        for (int c = t; c < t + free_cols; ++c) sys.unknowns.push_back({r, c});

    auto unknown_index = [&](int r, int c) -> std::optional<std::size_t> {
        if (reduced && c >= s) return std::nullopt;
        return static_cast<std::size_t>((r - s) * free_cols + (c - t));
    };
    auto forced_value = [](int r, int c) { return r == c ? 1 : 0; };

    std::vector<Vector> rows;
    if (!reduced) {
        for (int r = s; r < n; ++r)
            for (int c = s; c < n; ++c) {
                Vector row(sys.unknowns.size(), Integer(0));
                row[*unknown_index(r, c)] = 1;
                rows.push_back(std::move(row));
                sys.b.push_back(forced_value(r, c));
                sys.equations.push_back({0, r, c});
            }
    }

    const ktheory::TruncProjKGroup gs(n, s), gt(n, t);
    for (std::size_t idx = 0; idx < p.ks.size(); ++idx) {
        const int k = p.ks[idx];
        const IntMatrix psi_t = scaled(ktheory::adams_matrix(k, gt), scales[idx]);
        const IntMatrix psi_s = scaled(ktheory::adams_matrix(k, gs), scales[idx]);
        for (int r = s; r < n; ++r)
            for (int c = t; c < n; ++c) {
                Vector row(sys.unknowns.size(), Integer(0));
                Integer rhs = 0;
                // (phi * psi_t)[r][c] = sum_e phi[r][e] psi_t[e][c]
                for (int e = t; e < n; ++e) {
                    const Integer& w = psi_t(static_cast<std::size_t>(e - t), static_cast<std::size_t>(c - t));
                    if (sgn(w) == 0) continue;
                    if (auto u = unknown_index(r, e)) row[*u] += w;
                    else rhs -= w * forced_value(r, e);
                }
                // (psi_s * phi)[r][c] = sum_f psi_s[r][f] phi[f][c]
                for (int f = s; f < n; ++f) {
                    const Integer& w = psi_s(static_cast<std::size_t>(r - s), static_cast<std::size_t>(f - s));
                    if (sgn(w) == 0) continue;
                    if (auto u = unknown_index(f, c)) row[*u] -= w;
                    else rhs += w * forced_value(f, c);
                }
                const bool trivial =
                    sgn(rhs) == 0 && std::all_of(row.begin(), row.end(), [](const Integer& x) { return sgn(x) == 0; });
                if (reduced && trivial) continue;
                rows.push_back(std::move(row));
                sys.b.push_back(rhs);
                sys.equations.push_back({k, r, c});
            }
    }

    sys.a = IntMatrix(rows.size(), sys.unknowns.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < sys.unknowns.size(); ++j) sys.a(i, j) = std::move(rows[i][j]);
    return sys;
}

std::vector<Integer> unit_scales(const RetractProblem& p) { return std::vector<Integer>(p.ks.size(), Integer(1)); }

json witness_to_json(const RetractProblem& p, const IntMatrix& phi) {
    return {{"row_exponents", exponent_range(p.s, p.n)},
            {"col_exponents", exponent_range(p.t, p.n)},
            {"entries", json_codec::encode(phi)}};
}

Rational canonical(Rational q) {
    q.canonicalize();
    return q;
}

}  // namespace

RetractProblem RetractProblem::make(int n, int s, int t, std::vector<int> ks) {
    if (!(1 <= t && t <= s && s <= n - 1))
        throw InputError("retract problem requires 1 <= t <= s <= n-1, got n=" + std::to_string(n) +
                         " s=" + std::to_string(s) + " t=" + std::to_string(t));
    for (int k : ks)
        if (k < 2) throw InputError("Adams indices must be >= 2, got " + std::to_string(k));
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return RetractProblem{n, s, t, std::move(ks)};
}

std::string LinearSystem::describe_layout() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < unknowns.size(); ++j)
        os << "x" << j << " = phi[mu^" << unknowns[j].row_exponent << "][mu^" << unknowns[j].col_exponent << "]\n";
    return os.str();
}

LinearSystem build_system(const RetractProblem& p) { return assemble(p, true, unit_scales(p)); }

LinearSystem build_full_system(const RetractProblem& p) { return assemble(p, false, unit_scales(p)); }

IntMatrix assemble_retract(const RetractProblem& p, std::span<const Integer> free_values) {
    const auto free_cols = static_cast<std::size_t>(p.s - p.t);
    const auto rows = static_cast<std::size_t>(p.n - p.s);
    if (free_values.size() != rows * free_cols) throw InputError("wrong number of free values");
    IntMatrix phi(rows, static_cast<std::size_t>(p.n - p.t));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < free_cols; ++c) phi(r, c) = free_values[r * free_cols + c];
        phi(r, free_cols + r) = 1;
    }
    return phi;
}

bool verify_witness(const RetractProblem& p, const IntMatrix& phi) {
    const ktheory::TruncProjKGroup gs(p.n, p.s), gt(p.n, p.t);
    if (phi.rows() != gs.rank() || phi.cols() != gt.rank()) return false;
    if (!(phi * ktheory::restriction_matrix(gs, gt)).is_identity()) return false;
    for (int k : p.ks)
        if (!(phi * ktheory::adams_matrix(k, gt) == ktheory::adams_matrix(k, gs) * phi)) return false;
    return true;
}

RetractVerdict decide_retract(const RetractProblem& p) {
    const LinearSystem sys = build_system(p);
    auto answer = lattice::solve_diophantine_structured(sys.a, sys.b);
    if (auto* sol = std::get_if<lattice::Solution>(&answer)) {
        IntMatrix phi = assemble_retract(p, sol->particular);
        if (!verify_witness(p, phi)) throw VerificationFailure("retract witness failed verification");
        return {p, Exists{std::move(phi)}};
    }
    auto& cert = std::get<lattice::NoSolution>(answer);
    if (!lattice::verify_certificate(sys.a, sys.b, cert))
        throw VerificationFailure("retract certificate failed verification");
    return {p, Impossible{std::move(cert)}};
}

bool verify_verdict(const RetractVerdict& v) {
    if (const auto* e = std::get_if<Exists>(&v.outcome)) return verify_witness(v.problem, e->witness);
    const LinearSystem sys = build_system(v.problem);
    return lattice::verify_certificate(sys.a, sys.b, std::get<Impossible>(v.outcome).certificate);
}

ClosedForm closed_form_constraints(int n) {
    if (n < 4) throw InputError("closed form requires n >= 4");
    const Integer nn = n;
    ClosedForm f;
    f.n = n;
    f.c = canonical(Rational(nn - 3, 2));
    f.a = canonical(Rational(3 * nn * nn - 23 * nn + 44, 24));
    f.d = canonical(Rational(-3 * nn * nn + 13 * nn - 12, 24));
    f.c_integral = f.c.get_den() == 1;
    f.a_integral = f.a.get_den() == 1;
    f.d_integral = f.d.get_den() == 1;
    f.parity_condition = n % 2 == 1;
    f.mod24_condition = n % 24 == 3;
    return f;
}

bool scaled_equivariance_equivalence(const RetractProblem& p, int k) {
    if (k < 1) throw InputError("Adams index must be positive");
    RetractProblem single = p;
    single.ks = {k};
    const LinearSystem plain = assemble(single, false, {Integer(1)});
    const LinearSystem scaled_sys = assemble(single, false, {Integer(k)});
    return lattice::same_integer_solution_set(plain.a, plain.b, scaled_sys.a, scaled_sys.b);
}

json problem_to_json(const RetractProblem& p) {
    return {{"n", p.n}, {"s", p.s}, {"t", p.t}, {"ks", p.ks}};
}

RetractProblem problem_from_json(const json& j) {
    try {
        return RetractProblem::make(j.at("n").get<int>(), j.at("s").get<int>(), j.at("t").get<int>(),
                                    j.at("ks").get<std::vector<int>>());
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed retract problem: ") + e.what());
    }
}

json to_json(const RetractVerdict& v) {
    json out{{"problem", problem_to_json(v.problem)}};
    if (const auto* e = std::get_if<Exists>(&v.outcome)) {
        out["verdict"] = "exists";
        out["witness"] = witness_to_json(v.problem, e->witness);
    } else {
        const auto& c = std::get<Impossible>(v.outcome).certificate;
        out["verdict"] = "impossible";
        out["certificate"] = {{"y", json_codec::encode(c.certificate)}, {"modulus", json_codec::encode(c.modulus)}};
    }
    return out;
}

RetractVerdict verdict_from_json(const json& j) {
    try {
        const RetractProblem p = problem_from_json(j.at("problem"));
        const std::string kind = j.at("verdict").get<std::string>();
        if (kind == "exists")
            return {p, Exists{json_codec::decode_matrix(j.at("witness").at("entries"),
                                                        static_cast<std::size_t>(p.n - p.t))}};
        if (kind == "impossible") {
            const json& c = j.at("certificate");
            return {p, Impossible{{json_codec::decode_vector(c.at("y")), json_codec::decode_integer(c.at("modulus"))}}};
        }
        throw InputError("unknown retract verdict '" + kind + "'");
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed retract verdict: ") + e.what());
    }
}

json closed_form_to_json(const ClosedForm& f) {
    return {{"n", f.n},
            {"c", json_codec::encode(f.c)},
            {"a", json_codec::encode(f.a)},
            {"d", json_codec::encode(f.d)},
            {"c_integral", f.c_integral},
            {"a_integral", f.a_integral},
            {"d_integral", f.d_integral},
            {"parity_condition", f.parity_condition},
            {"mod24_condition", f.mod24_condition}};
}

}  // namespace stiefel::retract
