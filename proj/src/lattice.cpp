#include "tvarsl2/lattice.hpp"

#include <algorithm>

namespace tvarsl2 {

namespace {

void check_same_rank(int a, int b) {
    if (a != b) throw domain_error("rank mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

bool LatticeVector::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Int& x) { return x == 0; });
}

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
    check_same_rank(rank(), o.rank());
    if (side != o.side) throw domain_error("adding vectors from different sides");
    std::vector<Int> c(coords);
    for (int i = 0; i < rank(); ++i) c[i] += o.coords[i];
    return LatticeVector(side, std::move(c));
}

LatticeVector LatticeVector::operator-(const LatticeVector& o) const { return *this + (-o); }

LatticeVector LatticeVector::operator-() const {
    std::vector<Int> c(coords);
    for (auto& x : c) x = -x;
    return LatticeVector(side, std::move(c));
}

LatticeVector LatticeVector::operator*(const Int& k) const {
    std::vector<Int> c(coords);
    for (auto& x : c) x *= k;
    return LatticeVector(side, std::move(c));
}

bool LatticeVector::operator<(const LatticeVector& o) const {
    if (side != o.side) return side < o.side;
    return std::lexicographical_compare(coords.begin(), coords.end(), o.coords.begin(), o.coords.end());
}

VectorQ::VectorQ(const LatticeVector& v) : side(v.side) {
    coords.reserve(v.coords.size());
    for (const auto& x : v.coords) coords.emplace_back(x);
}

bool VectorQ::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rat& x) { return x == 0; });
}

bool VectorQ::is_integral() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rat& x) { return is_integer(x); });
}

LatticeVector VectorQ::to_lattice() const {
    std::vector<Int> c;
    c.reserve(coords.size());
    for (const auto& x : coords) c.push_back(to_integer(x));
    return LatticeVector(side, std::move(c));
}

VectorQ VectorQ::operator+(const VectorQ& o) const {
    check_same_rank(rank(), o.rank());
    if (side != o.side) throw domain_error("adding vectors from different sides");
    std::vector<Rat> c(coords);
    for (int i = 0; i < rank(); ++i) c[i] += o.coords[i];
    return VectorQ(side, std::move(c));
}

VectorQ VectorQ::operator-(const VectorQ& o) const { return *this + (-o); }

VectorQ VectorQ::operator-() const {
    std::vector<Rat> c(coords);
    for (auto& x : c) x = -x;
    return VectorQ(side, std::move(c));
}

VectorQ VectorQ::operator*(const Rat& k) const {
    std::vector<Rat> c(coords);
    for (auto& x : c) x *= k;
    return VectorQ(side, std::move(c));
}

bool VectorQ::operator<(const VectorQ& o) const {
    if (side != o.side) return side < o.side;
    return std::lexicographical_compare(coords.begin(), coords.end(), o.coords.begin(), o.coords.end());
}

Rat pairing(const VectorQ& a, const VectorQ& b) {
    check_same_rank(a.rank(), b.rank());
    if (a.side == b.side) throw domain_error("pairing requires one M-side and one N-side vector");
    Rat acc(0);
    for (int i = 0; i < a.rank(); ++i) acc += a.coords[i] * b.coords[i];
    return acc;
}

Rat pairing(const LatticeVector& a, const LatticeVector& b) { return pairing(VectorQ(a), VectorQ(b)); }
Rat pairing(const LatticeVector& a, const VectorQ& b) { return pairing(VectorQ(a), b); }
Rat pairing(const VectorQ& a, const LatticeVector& b) { return pairing(a, VectorQ(b)); }

Int coord_gcd(const std::vector<Int>& c) {
    Int g(0);
    for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

bool is_primitive(const LatticeVector& v) {
    if (v.is_zero()) throw domain_error("primitivity is undefined for the zero vector");
    return coord_gcd(v.coords) == 1;
}

LatticeVector primitive_part(const LatticeVector& v) {
    if (v.is_zero()) throw domain_error("no primitive part of the zero vector");
    Int g = coord_gcd(v.coords);
    std::vector<Int> c(v.coords);
    for (auto& x : c) x /= g;
    return LatticeVector(v.side, std::move(c));
}

LatticeVector primitive_part(const VectorQ& v) {
    if (v.is_zero()) throw domain_error("no primitive part of the zero vector");
    Int lcm(1);
    for (const auto& x : v.coords) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Int> c;
    c.reserve(v.coords.size());
    for (const auto& x : v.coords) {
        Rat scaled = x * Rat(lcm);
        c.push_back(to_integer(scaled));
    }
    return primitive_part(LatticeVector(v.side, std::move(c)));
}

// ---------------------------------------------------------------------------
// Integer matrices

namespace {

int rows_of(const IntMat& a) { return static_cast<int>(a.size()); }
int cols_of(const IntMat& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

IntMat identity(int n) {
    IntMat id(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

void swap_rows(IntMat& a, int i, int j) { std::swap(a[i], a[j]); }

void negate_row(IntMat& a, int i) {
    for (auto& x : a[i]) x = -x;
}

// row i += k * row j
void add_row(IntMat& a, int i, int j, const Int& k) {
    for (std::size_t t = 0; t < a[i].size(); ++t) a[i][t] += k * a[j][t];
}

void swap_cols(IntMat& a, int i, int j) {
    for (auto& row : a) std::swap(row[i], row[j]);
}

void negate_col(IntMat& a, int i) {
    for (auto& row : a) row[i] = -row[i];
}

// col i += k * col j
void add_col(IntMat& a, int i, int j, const Int& k) {
    for (auto& row : a) row[i] += k * row[j];
}

}  // namespace

IntMat hnf_rows(IntMat a) {
    int m = rows_of(a), n = cols_of(a);
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        // find row with nonzero entry in this column at or below `row`
        int piv = -1;
        for (int i = row; i < m; ++i)
            if (a[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        swap_rows(a, row, piv);
        // clear below via gcd steps
        for (int i = row + 1; i < m; ++i) {
            while (a[i][col] != 0) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a[row][col].get_mpz_t(), a[i][col].get_mpz_t());
                add_row(a, row, i, -q);
                swap_rows(a, row, i);
            }
        }
        if (a[row][col] < 0) negate_row(a, row);
        // reduce entries above the pivot into [0, pivot)
        for (int i = 0; i < row; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[row][col].get_mpz_t());
            if (q != 0) add_row(a, i, row, -q);
        }
        ++row;
    }
    a.resize(row);  // drop zero rows
    return a;
}

SmithDecomposition smith_normal_form(const IntMat& a_in) {
    SmithDecomposition d;
    int m = rows_of(a_in), n = cols_of(a_in);
    d.s = a_in;
    d.u = identity(m);
    d.v = identity(n);
    IntMat& s = d.s;

    int k = 0;
    while (k < m && k < n) {
        // locate a nonzero entry with minimal |value| in the remaining block
        int pi = -1, pj = -1;
        for (int i = k; i < m; ++i)
            for (int j = k; j < n; ++j)
                if (s[i][j] != 0) {
                    if (pi < 0) { pi = i; pj = j; }
                    else {
                        Int cur, best;
                        mpz_abs(cur.get_mpz_t(), s[i][j].get_mpz_t());
                        mpz_abs(best.get_mpz_t(), s[pi][pj].get_mpz_t());
                        if (cur < best) { pi = i; pj = j; }
                    }
                }
        if (pi < 0) break;  // all zero
        if (pi != k) { swap_rows(s, k, pi); swap_rows(d.u, k, pi); }
        if (pj != k) { swap_cols(s, k, pj); swap_cols(d.v, k, pj); }

        bool clean = true;
        for (int i = k + 1; i < m; ++i) {
            if (s[i][k] == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), s[i][k].get_mpz_t(), s[k][k].get_mpz_t());
            add_row(s, i, k, -q);
            add_row(d.u, i, k, -q);
            if (s[i][k] != 0) clean = false;
        }
        for (int j = k + 1; j < n; ++j) {
            if (s[k][j] == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), s[k][j].get_mpz_t(), s[k][k].get_mpz_t());
            add_col(s, j, k, -q);
            add_col(d.v, j, k, -q);
            if (s[k][j] != 0) clean = false;
        }
        if (!clean) continue;  // pivot changed size; redo this k

        // enforce divisibility s[k][k] | s[i][j] for the remaining block
        bool divides_all = true;
        for (int i = k + 1; i < m && divides_all; ++i)
            for (int j = k + 1; j < n && divides_all; ++j)
                if (s[i][j] % s[k][k] != 0) {
                    add_row(s, k, i, Int(1));
                    add_row(d.u, k, i, Int(1));
                    divides_all = false;
                }
        if (!divides_all) continue;

        if (s[k][k] < 0) { negate_row(s, k); negate_row(d.u, k); }
        ++k;
    }
    d.rank = k;
    return d;
}

IntMat integral_kernel_basis(const IntMat& a) {
    int n = cols_of(a);
    if (rows_of(a) == 0 || n == 0) {
        // kernel is everything
        return hnf_rows(identity(n));
    }
    SmithDecomposition d = smith_normal_form(a);
    IntMat basis;
    for (int j = d.rank; j < n; ++j) {
        std::vector<Int> col(n);
        for (int i = 0; i < n; ++i) col[i] = d.v[i][j];
        basis.push_back(std::move(col));
    }
    return hnf_rows(std::move(basis));
}

int rank_of(const IntMat& a) {
    if (rows_of(a) == 0) return 0;
    return smith_normal_form(a).rank;
}

SolvePairingsResult solve_pairings(const std::vector<LatticeVector>& rows,
                                   const std::vector<Rat>& targets) {
    if (rows.empty()) throw domain_error("solve_pairings: empty system");
    if (rows.size() != targets.size()) throw domain_error("solve_pairings: rows/targets length mismatch");
    int n = rows[0].rank();
    IntMat a;
    for (const auto& r : rows) {
        check_same_rank(r.rank(), n);
        a.push_back(r.coords);
    }
    Side solution_side = dual_side(rows[0].side);

    // Clear denominators: <e, r_i> = p_i/q_i  <=>  <e, q_i r_i> = p_i, still over Z.
    IntMat ai = a;
    std::vector<Int> t(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        Int den = denominator(targets[i]);
        for (auto& x : ai[i]) x *= den;
        t[i] = numerator(targets[i]);
    }

    SmithDecomposition d = smith_normal_form(ai);
    int m = rows_of(ai);
    // y solves S y = U t, x = V y
    std::vector<Int> ut(m, Int(0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) ut[i] += d.u[i][j] * t[j];

    SolvePairingsResult res;
    for (int i = d.rank; i < m; ++i)
        if (ut[i] != 0) {
            res.kind = SolvePairingsResult::Kind::Inconsistent;
            return res;
        }
    std::vector<Int> y(n, Int(0));
    for (int i = 0; i < d.rank; ++i) {
        if (ut[i] % d.s[i][i] != 0) {
            res.kind = SolvePairingsResult::Kind::NoIntegralSolution;
            return res;
        }
        y[i] = ut[i] / d.s[i][i];
    }
    std::vector<Int> x(n, Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x[i] += d.v[i][j] * y[j];
    LatticeVector part(solution_side, std::move(x));

    IntMat ker = integral_kernel_basis(a);
    if (ker.empty()) {
        res.kind = SolvePairingsResult::Kind::Unique;
        res.particular = std::move(part);
    } else {
        res.kind = SolvePairingsResult::Kind::Family;
        res.particular = std::move(part);
        for (auto& row : ker) res.kernel_basis.emplace_back(solution_side, std::move(row));
    }
    return res;
}

IntMat complete_to_basis(const IntMat& sat, int n) {
    if (sat.empty()) return identity(n);
    // SNF of the basis matrix: sat = U^-1 S V^-1 with S = diag(1,...,1) on the
    // saturated rows; the rows of V^-1... simpler: rows of `sat` span a
    // saturated lattice iff SNF diagonal is all ones; then V maps the span of
    // the first k unit vectors onto it. Basis of Z^n adapted to the sublattice:
    // rows i of (V^T applied to units) -- concretely x = V y with y = e_i gives
    // columns of V; first k columns of V after U-transform... We instead use:
    // complete rows via HNF of [sat; I] keeping sat rows first.
    SmithDecomposition d = smith_normal_form(sat);
    int k = d.rank;
    for (int i = 0; i < k; ++i)
        if (d.s[i][i] != 1) throw internal_error("complete_to_basis: sublattice not saturated");
    // sat = U^-1 * S * V^-1, so the row space of sat equals the row space of
    // (first k rows of V^-1). V is unimodular; rows of V^-1 form a basis of Z^n
    // whose first k rows span the sublattice.
    // Compute V^-1 by inverting the unimodular V via adjugate-free Gaussian
    // elimination over Z: since V is unimodular, solve V^T X^T = I.
    int n2 = static_cast<int>(d.v.size());
    if (n2 != n) throw internal_error("complete_to_basis: dimension mismatch");
    // invert V by augmenting with identity and running integer row reduction
    // (valid because det V = +-1)
    IntMat aug(n, std::vector<Int>(2 * n, Int(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = d.v[i][j];
        aug[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (aug[i][col] != 0) { piv = i; break; }
        if (piv < 0) throw internal_error("complete_to_basis: singular V");
        swap_rows(aug, col, piv);
        for (int i = col + 1; i < n; ++i) {
            while (aug[i][col] != 0) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), aug[col][col].get_mpz_t(), aug[i][col].get_mpz_t());
                add_row(aug, col, i, -q);
                swap_rows(aug, col, i);
            }
        }
    }
    // back substitution; diagonal entries are +-1 now
    for (int col = n - 1; col >= 0; --col) {
        if (aug[col][col] < 0) negate_row(aug, col);
        for (int i = 0; i < col; ++i) {
            Int q = aug[i][col];  // divide by 1
            if (q != 0) add_row(aug, i, col, -q);
        }
    }
    IntMat vinv(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) vinv[i][j] = aug[i][n + j];
    // rows of result: V^-1 row-space basis; but we want the *given* sat rows
    // first. The first k rows of V^-1 span the same sublattice as sat; replace
    // them by sat itself and keep the completion rows.
    IntMat out = sat;
    for (int i = k; i < n; ++i) out.push_back(vinv[i]);
    return out;
}

}  // namespace tvarsl2
