#include "stiefel/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "stiefel/error.hpp"

namespace stiefel::lattice {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<Vector> converted;
    for (const auto& r : rows) {
        Vector v;
        for (long x : r) v.emplace_back(x);
        converted.push_back(std::move(v));
    }
    return from_rows(converted);
}

IntMatrix IntMatrix::from_rows(const std::vector<Vector>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InputError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Vector IntMatrix::column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

Vector IntMatrix::apply(std::span<const Integer> x) const {
    if (x.size() != cols_) throw InputError("matrix-vector dimension mismatch");
    Vector out(rows_, Integer(0));
    for (std::size_t i = 0; i < rows_; ++i) {
        Integer acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            const Integer& e = (*this)(i, j);
            if (sgn(e) != 0 && sgn(x[j]) != 0) acc += e * x[j];
        }
        out[i] = std::move(acc);
    }
    return out;
}

Vector IntMatrix::apply_left(std::span<const Integer> y) const {
    if (y.size() != rows_) throw InputError("vector-matrix dimension mismatch");
    Vector out(cols_, Integer(0));
    for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(y[i]) == 0) continue;
        for (std::size_t j = 0; j < cols_; ++j) {
            const Integer& e = (*this)(i, j);
            if (sgn(e) != 0) out[j] += y[i] * e;
        }
    }
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> cols) const {
    IntMatrix out(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = (*this)(i, cols[k]);
    return out;
}

std::vector<Vector> IntMatrix::to_rows() const {
    std::vector<Vector> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.emplace_back(row(i).begin(), row(i).end());
    return out;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Integer& bkj = b(k, j);
                if (sgn(bkj) != 0) c(i, j) += aik * bkj;
            }
        }
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference dimension mismatch");
    IntMatrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] - b.data_[k];
    return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix scaled(const IntMatrix& m, const Integer& factor) {
    IntMatrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) *= factor;
    return out;
}

Vector SnfDecomposition::diagonal() const {
    const std::size_t k = std::min(d.rows(), d.cols());
    Vector diag(k);
    for (std::size_t i = 0; i < k; ++i) diag[i] = d(i, i);
    return diag;
}

std::size_t SnfDecomposition::rank() const {
    std::size_t r = 0;
    for (const auto& x : diagonal())
        if (sgn(x) != 0) ++r;
    return r;
}

namespace {

// Elementary row operation, recorded so that rows of U can be rebuilt on demand.
struct RowOp {
    enum class Kind { Swap, AddMultiple, Negate } kind;
    std::size_t target;
    std::size_t source;  // unused for Negate
    Integer factor;      // row[target] += factor·row[source]
};

// Reduces a working copy of M to Smith form. Row operations are replayed on
// the optional tracked matrix U and tracked vector (U·b), and logged when
// requested; column operations are replayed on the optional matrix V.
class SmithReducer {
public:
    SmithReducer(IntMatrix work, IntMatrix* u, IntMatrix* v, Vector* rhs, std::vector<RowOp>* log)
        : a_(std::move(work)), u_(u), v_(v), rhs_(rhs), log_(log) {}

    IntMatrix run() {
        const std::size_t steps = std::min(a_.rows(), a_.cols());
        for (std::size_t t = 0; t < steps; ++t)
            if (!reduce_at(t)) break;
        return std::move(a_);
    }

private:
    bool reduce_at(std::size_t t) {
        for (;;) {
            auto pivot = find_pivot(t);
            if (!pivot) return false;
            auto [pi, pj] = *pivot;
            if (pi != t) swap_rows(t, pi);
            if (pj != t) swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < a_.rows(); ++i) {
                if (sgn(a_(i, t)) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
                add_row_multiple(i, t, -q);
                if (sgn(a_(i, t)) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < a_.cols(); ++j) {
                if (sgn(a_(t, j)) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
                add_col_multiple(j, t, -q);
                if (sgn(a_(t, j)) != 0) clean = false;
            }
            if (!clean) continue;

            if (auto bad = find_non_divisible(t)) {
                add_row_multiple(t, *bad, Integer(1));
                continue;
            }
            if (sgn(a_(t, t)) < 0) negate_row(t);
            return true;
        }
    }

    std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t t) const {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        const Integer* best_val = nullptr;
        for (std::size_t i = t; i < a_.rows(); ++i)
            for (std::size_t j = t; j < a_.cols(); ++j) {
                const Integer& x = a_(i, j);
                if (sgn(x) == 0) continue;
                if (!best_val || mpz_cmpabs(x.get_mpz_t(), best_val->get_mpz_t()) < 0) {
                    best = {i, j};
                    best_val = &x;
                }
            }
        return best;
    }

    std::optional<std::size_t> find_non_divisible(std::size_t t) const {
        const Integer& p = a_(t, t);
        if (mpz_cmpabs_ui(p.get_mpz_t(), 1) == 0) return std::nullopt;
        for (std::size_t i = t + 1; i < a_.rows(); ++i)
            for (std::size_t j = t + 1; j < a_.cols(); ++j)
                if (sgn(a_(i, j)) != 0 && !mpz_divisible_p(a_(i, j).get_mpz_t(), p.get_mpz_t())) return i;
        return std::nullopt;
    }

    void swap_rows(std::size_t x, std::size_t y) {
        for (std::size_t j = 0; j < a_.cols(); ++j) swap(a_(x, j), a_(y, j));
        if (u_)
            for (std::size_t j = 0; j < u_->cols(); ++j) swap((*u_)(x, j), (*u_)(y, j));
        if (rhs_) swap((*rhs_)[x], (*rhs_)[y]);
        if (log_) log_->push_back({RowOp::Kind::Swap, x, y, Integer(0)});
    }

    void swap_cols(std::size_t x, std::size_t y) {
        for (std::size_t i = 0; i < a_.rows(); ++i) swap(a_(i, x), a_(i, y));
        if (v_)
            for (std::size_t i = 0; i < v_->rows(); ++i) swap((*v_)(i, x), (*v_)(i, y));
    }

    // row[target] += f·row[source]
    void add_row_multiple(std::size_t target, std::size_t source, const Integer& f) {
        for (std::size_t j = 0; j < a_.cols(); ++j)
            if (sgn(a_(source, j)) != 0) a_(target, j) += f * a_(source, j);
        if (u_)
            for (std::size_t j = 0; j < u_->cols(); ++j)
                if (sgn((*u_)(source, j)) != 0) (*u_)(target, j) += f * (*u_)(source, j);
        if (rhs_) (*rhs_)[target] += f * (*rhs_)[source];
        if (log_) log_->push_back({RowOp::Kind::AddMultiple, target, source, f});
    }

    // col[target] += f·col[source]
    void add_col_multiple(std::size_t target, std::size_t source, const Integer& f) {
        for (std::size_t i = 0; i < a_.rows(); ++i)
            if (sgn(a_(i, source)) != 0) a_(i, target) += f * a_(i, source);
        if (v_)
            for (std::size_t i = 0; i < v_->rows(); ++i)
                if (sgn((*v_)(i, source)) != 0) (*v_)(i, target) += f * (*v_)(i, source);
    }

    void negate_row(std::size_t x) {
        for (std::size_t j = 0; j < a_.cols(); ++j) a_(x, j) = -a_(x, j);
        if (u_)
            for (std::size_t j = 0; j < u_->cols(); ++j) (*u_)(x, j) = -(*u_)(x, j);
        if (rhs_) (*rhs_)[x] = -(*rhs_)[x];
        if (log_) log_->push_back({RowOp::Kind::Negate, x, x, Integer(0)});
    }

    IntMatrix a_;
    IntMatrix* u_;
    IntMatrix* v_;
    Vector* rhs_;
    std::vector<RowOp>* log_;
};

// Row `index` of U = E_K ⋯ E_1, computed as e_indexᵀ·E_K⋯E_1 from the op log.
Vector row_of_transform(const std::vector<RowOp>& log, std::size_t index, std::size_t size) {
    Vector z(size, Integer(0));
    z[index] = 1;
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
        switch (it->kind) {
            case RowOp::Kind::Swap: swap(z[it->target], z[it->source]); break;
            case RowOp::Kind::AddMultiple:
                if (sgn(z[it->target]) != 0) z[it->source] += it->factor * z[it->target];
                break;
            case RowOp::Kind::Negate: z[it->target] = -z[it->target]; break;
        }
    }
    return z;
}

struct ReducedSystem {
    Vector diagonal;       // length min(rows, cols)
    std::size_t rank = 0;  // nonzero diagonal entries form a prefix
    Vector transformed_rhs;
    IntMatrix v;
    std::vector<RowOp> log;
};

ReducedSystem reduce_system(const IntMatrix& a, std::span<const Integer> b) {
    ReducedSystem rs;
    rs.v = IntMatrix::identity(a.cols());
    rs.transformed_rhs.assign(b.begin(), b.end());
    IntMatrix d = SmithReducer(a, nullptr, &rs.v, &rs.transformed_rhs, &rs.log).run();
    const std::size_t k = std::min(a.rows(), a.cols());
    rs.diagonal.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        rs.diagonal[i] = d(i, i);
        if (sgn(rs.diagonal[i]) != 0) ++rs.rank;
    }
    return rs;
}

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& m) {
    if (m.empty()) throw InputError("smith_normal_form requires a nonempty matrix");
    SnfDecomposition out;
    out.u = IntMatrix::identity(m.rows());
    out.v = IntMatrix::identity(m.cols());
    out.d = SmithReducer(m, &out.u, &out.v, nullptr, nullptr).run();
    return out;
}

Integer smallest_prime_not_dividing(const Integer& value) {
    Integer p = 2;
    for (;;) {
        if (sgn(value) == 0 || !mpz_divisible_p(value.get_mpz_t(), p.get_mpz_t())) return p;
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
}

DiophantineAnswer solve_diophantine(const IntMatrix& a, std::span<const Integer> b) {
    if (b.size() != a.rows()) throw InputError("right-hand side length does not match row count");

    if (a.rows() == 0) {
        Solution s{Vector(a.cols(), Integer(0)), {}};
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Vector e(a.cols(), Integer(0));
            e[j] = 1;
            s.kernel_basis.push_back(std::move(e));
        }
        return s;
    }
    if (a.cols() == 0) {
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (sgn(b[i]) == 0) continue;
            Vector y(a.rows(), Integer(0));
            y[i] = 1;
            return NoSolution{std::move(y), smallest_prime_not_dividing(b[i])};
        }
        return Solution{{}, {}};
    }

    ReducedSystem rs = reduce_system(a, b);
    Vector y(a.cols(), Integer(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const Integer& c = rs.transformed_rhs[i];
        if (i < rs.rank) {
            if (mpz_divisible_p(c.get_mpz_t(), rs.diagonal[i].get_mpz_t())) {
                mpz_divexact(y[i].get_mpz_t(), c.get_mpz_t(), rs.diagonal[i].get_mpz_t());
                continue;
            }
            return NoSolution{row_of_transform(rs.log, i, a.rows()), rs.diagonal[i]};
        }
        if (sgn(c) != 0) return NoSolution{row_of_transform(rs.log, i, a.rows()), smallest_prime_not_dividing(c)};
    }

    Solution s;
    s.particular = rs.v.apply(y);
    for (std::size_t j = rs.rank; j < a.cols(); ++j) s.kernel_basis.push_back(rs.v.column(j));
    return s;
}

bool verify_solution(const IntMatrix& a, std::span<const Integer> b, const Solution& s) {
    if (b.size() != a.rows() || s.particular.size() != a.cols()) return false;
    if (a.apply(s.particular) != Vector(b.begin(), b.end())) return false;
    for (const auto& k : s.kernel_basis) {
        if (k.size() != a.cols()) return false;
        for (const auto& x : a.apply(k))
            if (sgn(x) != 0) return false;
    }
    return true;
}

bool verify_certificate(const IntMatrix& a, std::span<const Integer> b, const NoSolution& c) {
    if (c.modulus <= 1 || c.certificate.size() != a.rows() || b.size() != a.rows()) return false;
    for (const auto& x : a.apply_left(c.certificate))
        if (!mpz_divisible_p(x.get_mpz_t(), c.modulus.get_mpz_t())) return false;
    Integer yb = 0;
    for (std::size_t i = 0; i < b.size(); ++i) yb += c.certificate[i] * b[i];
    return !mpz_divisible_p(yb.get_mpz_t(), c.modulus.get_mpz_t());
}

std::optional<std::vector<Rational>> unique_rational_solution(const IntMatrix& a, std::span<const Integer> b) {
    if (b.size() != a.rows()) throw InputError("right-hand side length does not match row count");
    if (a.cols() == 0) {
        if (std::any_of(b.begin(), b.end(), [](const Integer& x) { return sgn(x) != 0; })) return std::nullopt;
        return std::vector<Rational>{};
    }
    if (a.rows() == 0) return std::nullopt;
    ReducedSystem rs = reduce_system(a, b);
    if (rs.rank < a.cols()) return std::nullopt;
    for (std::size_t i = rs.rank; i < a.rows(); ++i)
        if (sgn(rs.transformed_rhs[i]) != 0) return std::nullopt;
    std::vector<Rational> y(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        y[j] = Rational(rs.transformed_rhs[j], rs.diagonal[j]);
        y[j].canonicalize();
    }
    std::vector<Rational> x(a.cols(), Rational(0));
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (sgn(rs.v(i, j)) != 0) x[i] += Rational(rs.v(i, j)) * y[j];
    return x;
}

bool same_integer_solution_set(const IntMatrix& a1, std::span<const Integer> b1, const IntMatrix& a2,
                               std::span<const Integer> b2) {
    if (a1.cols() != a2.cols()) throw InputError("systems have different unknown counts");
    const auto s1 = solve_diophantine(a1, b1);
    const auto s2 = solve_diophantine(a2, b2);
    const auto* x1 = std::get_if<Solution>(&s1);
    const auto* x2 = std::get_if<Solution>(&s2);
    if (!x1 || !x2) return !x1 && !x2;
    // x + span(K) lies inside the other affine lattice iff x solves it and K ⊆ its kernel.
    auto contained = [](const Solution& s, const IntMatrix& a, std::span<const Integer> b) {
        return verify_solution(a, b, Solution{s.particular, s.kernel_basis});
    };
    return contained(*x1, a2, b2) && contained(*x2, a1, b1);
}


namespace {

// Smallest D > 0 with D·z integral.
Integer common_denominator(const std::vector<Rational>& z) {
    Integer d = 1;
    for (const auto& q : z) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
    return d;
}

}  // namespace

std::optional<DiophantineAnswer> solve_by_substitution(const IntMatrix& a, std::span<const Integer> b) {
    if (b.size() != a.rows()) throw InputError("right-hand side length does not match row count");
    const std::size_t rows = a.rows(), cols = a.cols();

    std::vector<std::vector<std::size_t>> row_support(rows), col_support(cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (sgn(a(i, j)) != 0) {
                row_support[i].push_back(j);
                col_support[j].push_back(i);
            }

    std::vector<std::size_t> open_count(rows);
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < rows; ++i) {
        open_count[i] = row_support[i].size();
        if (open_count[i] == 1) queue.push_back(i);
    }

    constexpr std::size_t unused = static_cast<std::size_t>(-1);
    std::vector<bool> solved(cols, false);
    std::vector<std::size_t> step_of_row(rows, unused);
    std::vector<Rational> x(cols, Rational(0));
    std::vector<std::size_t> pivot_row, pivot_col;  // elimination order
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t i = queue[head];
        if (step_of_row[i] != unused || open_count[i] != 1) continue;
        std::size_t u = cols;
        Rational rest = Rational(b[i]);
        for (std::size_t j : row_support[i]) {
            if (solved[j]) rest -= Rational(a(i, j)) * x[j];
            else u = j;
        }
        x[u] = rest / Rational(a(i, u));
        solved[u] = true;
        step_of_row[i] = pivot_row.size();
        pivot_row.push_back(i);
        pivot_col.push_back(u);
        for (std::size_t r : col_support[u])
            if (--open_count[r] == 1 && step_of_row[r] == unused) queue.push_back(r);
    }
    if (pivot_col.size() != cols) return std::nullopt;

    // Pivot rows against pivot columns, both in elimination order, form a
    // lower-triangular matrix P. Solves wᵀ·P = v by back substitution.
    const std::size_t steps = cols;
    auto solve_left = [&](const std::vector<Rational>& v) {
        std::vector<Rational> w(steps, Rational(0));
        for (std::size_t m = steps; m-- > 0;) {
            const std::size_t c = pivot_col[m];
            Rational acc = v[c];
            for (std::size_t r : col_support[c]) {
                const std::size_t step = step_of_row[r];
                if (step != unused && step > m && sgn(w[step]) != 0) acc -= w[step] * Rational(a(r, c));
            }
            w[m] = acc / Rational(a(pivot_row[m], c));
        }
        return w;
    };

    // Equations not used for elimination must hold for the unique rational solution.
    for (std::size_t i = 0; i < rows; ++i) {
        if (step_of_row[i] != unused) continue;
        Rational lhs = 0;
        for (std::size_t j : row_support[i]) lhs += Rational(a(i, j)) * x[j];
        if (lhs == Rational(b[i])) continue;
        std::vector<Rational> v(cols, Rational(0));
        for (std::size_t j : row_support[i]) v[j] = a(i, j);
        const std::vector<Rational> w = solve_left(v);
        const Integer d = common_denominator(w);
        // y = d·(e_i − Σ w_m e_{pivot_row[m]}) annihilates A exactly.
        Vector y(rows, Integer(0));
        y[i] = d;
        for (std::size_t m = 0; m < steps; ++m) y[pivot_row[m]] = -Rational(w[m] * d).get_num();
        Integer yb = 0;
        for (std::size_t r = 0; r < rows; ++r) yb += y[r] * b[r];
        return DiophantineAnswer{NoSolution{std::move(y), smallest_prime_not_dividing(yb)}};
    }

    for (std::size_t m = 0; m < steps; ++m) {
        const std::size_t j = pivot_col[m];
        if (x[j].get_den() == 1) continue;
        // y = d·(row j of P⁻¹): y·A = d·e_j and y·b = d·x_j ≢ 0 (mod d).
        std::vector<Rational> e(cols, Rational(0));
        e[j] = 1;
        const std::vector<Rational> z = solve_left(e);
        const Integer d = common_denominator(z);
        Vector y(rows, Integer(0));
        for (std::size_t k = 0; k < steps; ++k) y[pivot_row[k]] = Rational(z[k] * d).get_num();
        return DiophantineAnswer{NoSolution{std::move(y), d}};
    }

    Vector particular(cols);
    for (std::size_t j = 0; j < cols; ++j) particular[j] = x[j].get_num();
    return DiophantineAnswer{Solution{std::move(particular), {}}};
}

DiophantineAnswer solve_diophantine_structured(const IntMatrix& a, std::span<const Integer> b) {
    if (auto answer = solve_by_substitution(a, b)) return std::move(*answer);
    return solve_diophantine(a, b);
}

}  // namespace stiefel::lattice
