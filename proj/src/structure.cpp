#include "hecke_f2/structure.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "hecke_f2/errors.hpp"

namespace hecke_f2 {

std::vector<std::pair<int64_t, int64_t>> graded_monomials(int64_t d) {
    std::vector<std::pair<int64_t, int64_t>> out;
    out.reserve(static_cast<size_t>(d * (d + 1) / 2));
    for (int64_t t = 0; t < d; ++t)
        for (int64_t a = t; a >= 0; --a) out.emplace_back(a, t - a);
    return out;
}

void BiSeries::set_term(int64_t a, int64_t b, bool on) {
    if (a < 0 || b < 0 || a + b >= degree_bound)
        throw InvalidIndex("BiSeries term outside the known degree range");
    if (on)
        terms.insert({a, b});
    else
        terms.erase({a, b});
}

static std::string var_pow(const std::string& name, int64_t e) {
    if (e == 0) return "";
    if (e == 1) return name;
    return name + "^" + std::to_string(e);
}

std::string BiSeries::text() const {
    std::string out;
    for (const auto& [a, b] : graded_monomials(degree_bound)) {
        if (!has_term(a, b)) continue;
        std::string term = var_pow(xname, a) + var_pow(yname, b);
        if (term.empty()) term = "1";
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out.empty() ? "0" : out;
}

nlohmann::ordered_json BiSeries::to_json() const {
    nlohmann::ordered_json j;
    j["vars"] = {xname, yname};
    j["degree_bound"] = degree_bound;
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : graded_monomials(degree_bound)) {
        if (!has_term(a, b)) continue;
        j["terms"].push_back({{"monomial", {a, b}}, {"coeff", 1}});
    }
    return j;
}

// ---------------------------------------------------------------------------
// operator expressions

static void normalize(std::vector<OpProduct>& terms) {
    std::sort(terms.begin(), terms.end());
    std::vector<OpProduct> out;
    for (size_t i = 0; i < terms.size();) {
        size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if ((j - i) & 1) out.push_back(terms[i]);
        i = j;
    }
    terms = std::move(out);
}

OperatorExpr ox_zero() { return {}; }

OperatorExpr ox_identity() { return {{OpProduct{}}}; }

OperatorExpr ox_gen(const OpSpec& op) { return {{OpProduct{op}}}; }

OperatorExpr ox_sum(const OperatorExpr& a, const OperatorExpr& b) {
    OperatorExpr out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    normalize(out.terms);
    return out;
}

OperatorExpr ox_compose(const OperatorExpr& a, const OperatorExpr& b) {
    OperatorExpr out;
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            OpProduct p = ta;
            p.insert(p.end(), tb.begin(), tb.end());
            out.terms.push_back(std::move(p));
        }
    normalize(out.terms);
    return out;
}

OperatorExpr ox_pow(const OperatorExpr& a, int64_t n) {
    if (n < 0) throw InvalidIndex("negative operator power");
    OperatorExpr out = ox_identity();
    for (int64_t i = 0; i < n; ++i) out = ox_compose(out, a);
    return out;
}

OperatorExpr series_operator(const BiSeries& s, const OpSpec& x, const OpSpec& y) {
    OperatorExpr out;
    for (const auto& [a, b] : s.terms) {
        OpProduct p;
        p.insert(p.end(), static_cast<size_t>(a), x);
        p.insert(p.end(), static_cast<size_t>(b), y);
        out.terms.push_back(std::move(p));
    }
    normalize(out.terms);
    return out;
}

std::string ox_name(const OperatorExpr& e) {
    if (e.terms.empty()) return "0";
    std::string out;
    for (const auto& term : e.terms) {
        if (!out.empty()) out += " + ";
        if (term.empty()) {
            out += "1";
            continue;
        }
        std::string prod;
        for (size_t i = 0; i < term.size();) {
            size_t j = i;
            while (j < term.size() && term[j] == term[i]) ++j;
            if (!prod.empty()) prod += "*";
            prod += op_name(term[i]);
            if (j - i > 1) prod += "^" + std::to_string(j - i);
            i = j;
        }
        out += prod;
    }
    return out;
}

static bool raises_degree(const OpSpec& op) {
    return op.kind == OpKind::Theta || op.kind == OpKind::VOp;
}

OpMatrix eval_expr(const PolyAlgebra& alg, const OperatorExpr& e) {
    const int64_t D = alg.D;
    BitMatrix acc(D, D);
    int64_t valid = D;
    for (const auto& term : e.terms) {
        if (term.empty()) {
            acc = add(acc, BitMatrix::identity(D));
            continue;
        }
        if (term.size() > 1)
            for (const auto& op : term)
                if (raises_degree(op))
                    throw InvalidIndex(
                        "degree-raising operator inside a composition product");
        BitMatrix m = alg.op_matrix(term[0]);
        int64_t tv = alg.valid_cols(term[0]);
        for (size_t i = 1; i < term.size(); ++i) {
            m = mul(m, alg.op_matrix(term[i]));
            tv = std::min(tv, alg.valid_cols(term[i]));
        }
        acc = add(acc, m);
        valid = std::min(valid, tv);
    }
    return {std::move(acc), valid};
}

// ---------------------------------------------------------------------------
// duality

static int dot_bits(const uint64_t* a, const std::vector<uint64_t>& b, int64_t nw) {
    uint64_t acc = 0;
    int64_t n = std::min<int64_t>(nw, static_cast<int64_t>(b.size()));
    for (int64_t k = 0; k < n; ++k) acc ^= a[k] & b[k];
    return static_cast<int>(std::popcount(acc) & 1u);
}

int pairing_bit(const BitMatrix& op, const std::vector<uint64_t>& form) {
    if (op.rows < 2) throw InvalidIndex("pairing needs coordinate dimension >= 2");
    return dot_bits(op.row(1), form, op.wpr);
}

// Row vector r (packed over m.rows bits) times m: XOR of the rows picked by r.
static std::vector<uint64_t> rvec_mul(const std::vector<uint64_t>& r,
                                      const BitMatrix& m) {
    std::vector<uint64_t> out(static_cast<size_t>(m.wpr), 0);
    for (int64_t i = 0; i < m.rows; ++i) {
        if (!get_bit(r, i)) continue;
        const uint64_t* p = m.row(i);
        for (int64_t k = 0; k < m.wpr; ++k) out[static_cast<size_t>(k)] ^= p[k];
    }
    return out;
}

static std::vector<uint64_t> apply_pow(const BitMatrix& m, std::vector<uint64_t> v,
                                       int64_t e) {
    for (int64_t i = 0; i < e; ++i) v = mat_vec(m, v);
    return v;
}

// r-vectors e_1^T mx^a my^b for every grid monomial, in graded order.
static std::vector<std::vector<uint64_t>> pairing_rvecs(
    int64_t D, const std::vector<std::pair<int64_t, int64_t>>& grid,
    const BitMatrix& mx, const BitMatrix& my) {
    std::map<std::pair<int64_t, int64_t>, size_t> at;
    for (size_t g = 0; g < grid.size(); ++g) at[grid[g]] = g;
    std::vector<std::vector<uint64_t>> r(grid.size());
    for (size_t g = 0; g < grid.size(); ++g) {
        auto [a, b] = grid[g];
        if (a == 0 && b == 0) {
            r[g].assign(static_cast<size_t>(nwords(D)), 0);
            set_bit(r[g], 1);
        } else if (b > 0) {
            r[g] = rvec_mul(r[at.at({a, b - 1})], my);
        } else {
            r[g] = rvec_mul(r[at.at({a - 1, 0})], mx);
        }
    }
    return r;
}

DualBasis dual_basis_rows(const PolyAlgebra& alg,
                          const std::vector<std::vector<uint64_t>>& rows,
                          const BitMatrix& mx, const BitMatrix& my, int64_t d) {
    const int64_t D = alg.D;
    const int64_t dim_s = static_cast<int64_t>(rows.size());
    if (d < 1) throw InvalidIndex("dual basis needs degree bound >= 1");
    if (dim_s == 0) throw SingularPairing("dual basis over an empty space");

    auto targets = graded_monomials(d);
    const size_t m_count = targets.size();

    for (int64_t pad : {0, 2, 4, 8, 16}) {
        const int64_t grid_deg = d + pad;
        auto grid = graded_monomials(grid_deg);
        auto rv = pairing_rvecs(D, grid, mx, my);

        BitMatrix P(static_cast<int64_t>(grid.size()), dim_s);
        for (size_t g = 0; g < grid.size(); ++g)
            for (int64_t j = 0; j < dim_s; ++j)
                if (dot_bits(rv[g].data(), rows[static_cast<size_t>(j)],
                             static_cast<int64_t>(rv[g].size())))
                    P.set(static_cast<int64_t>(g), j, 1);

        std::vector<std::vector<uint64_t>> forms;
        bool solved = true;
        for (size_t k = 0; k < m_count; ++k) {
            std::vector<uint64_t> rhs(static_cast<size_t>(nwords(P.rows)), 0);
            set_bit(rhs, static_cast<int64_t>(k));
            auto sol = solve(P, rhs);
            if (!sol) {
                if (pad == 0)
                    throw SingularPairing(
                        "monomial pairing system unsolvable on this space");
                solved = false;
                break;
            }
            std::vector<uint64_t> form(static_cast<size_t>(nwords(D)), 0);
            for (int64_t j = 0; j < dim_s; ++j)
                if (get_bit(*sol, j)) xor_into(form, rows[static_cast<size_t>(j)]);
            forms.push_back(std::move(form));
        }
        if (!solved) continue;

        // Tail certificate: every degree-d monomial must kill every dual form.
        // Granted that, any operator monomial of degree >= d kills them too,
        // so coefficient extraction below degree d cannot see truncation tails.
        bool tail_dead = true;
        for (int64_t a = d; a >= 0 && tail_dead; --a) {
            const int64_t b = d - a;
            for (const auto& form : forms) {
                auto v = apply_pow(mx, apply_pow(my, form, b), a);
                if (!all_zero(v)) {
                    tail_dead = false;
                    break;
                }
            }
        }
        if (tail_dead) return {d, grid_deg, targets, std::move(forms)};
    }
    throw InsufficientScale(
        "dual basis tail certificate unreachable; grow the space or degree bound");
}

DualBasis dual_basis(const PolyAlgebra& alg, const FormSpace& space,
                     const BitMatrix& mx, const BitMatrix& my, int64_t d) {
    std::vector<std::vector<uint64_t>> rows;
    rows.reserve(static_cast<size_t>(space.dim()));
    for (int64_t i = 0; i < space.dim(); ++i) rows.push_back(space.basis_row(i));
    return dual_basis_rows(alg, rows, mx, my, d);
}

BiSeries express_in_generators(const PolyAlgebra& alg, const BitMatrix& t,
                               const BitMatrix& mx, const BitMatrix& my,
                               const DualBasis& dual, const std::string& xname,
                               const std::string& yname) {
    (void)alg;
    BiSeries s;
    s.xname = xname;
    s.yname = yname;
    s.degree_bound = dual.d;
    for (size_t k = 0; k < dual.monomials.size(); ++k)
        if (pairing_bit(t, dual.forms[k]))
            s.terms.insert(dual.monomials[k]);

    // The extracted truncation must agree with t on every dual form, exactly.
    // Together with the dual basis' tail certificate this pins each extracted
    // coefficient, not just the pairing bits used to read them off.
    for (size_t k = 0; k < dual.forms.size(); ++k) {
        const auto& form = dual.forms[k];
        std::vector<uint64_t> lhs = mat_vec(t, form);
        std::vector<uint64_t> rhs(lhs.size(), 0);
        std::map<int64_t, std::vector<uint64_t>> my_pow;  // b -> my^b form
        my_pow[0] = form;
        for (const auto& [a, b] : s.terms) {
            if (!my_pow.count(b)) {
                auto it = std::prev(my_pow.upper_bound(b));  // largest key <= b
                my_pow[b] = apply_pow(my, it->second, b - it->first);
            }
            xor_into(rhs, apply_pow(mx, my_pow[b], a));
        }
        xor_into(lhs, rhs);
        if (!all_zero(lhs))
            throw NotInAlgebra("extraction residual survives on a dual form",
                               static_cast<long long>(k));
    }
    return s;
}

// ---------------------------------------------------------------------------
// filtration-style invariants

int64_t nilpotence_index(const std::vector<BitMatrix>& gens,
                         const std::vector<uint64_t>& v, int64_t dim) {
    if (gens.empty()) throw InvalidIndex("nilpotence_index needs generators");
    if (all_zero(v)) return 0;
    BitMatrix level(1, dim);
    level.row_assign(0, v);
    Echelon cur = echelon(level);
    for (int64_t k = 1; k <= dim + 1; ++k) {
        BitMatrix next(cur.rank() * static_cast<int64_t>(gens.size()), dim);
        int64_t r = 0;
        for (const auto& g : gens)
            for (int64_t i = 0; i < cur.rank(); ++i)
                next.row_assign(r++, mat_vec(g, cur.mat.row_copy(i)));
        cur = echelon(next);
        if (cur.rank() == 0) return k;
    }
    throw InsufficientScale("generator ideal is not nilpotent on this vector");
}

// Enumerate r-vectors for all monomials of total degree < k_max in the
// generators, tagging each with its degree.
static void monomial_rvecs(const std::vector<BitMatrix>& gens, size_t i,
                           int64_t deg, int64_t k_max,
                           const std::vector<uint64_t>& r,
                           std::vector<std::pair<int64_t, std::vector<uint64_t>>>& out) {
    if (i == gens.size()) {
        out.emplace_back(deg, r);
        return;
    }
    std::vector<uint64_t> cur = r;
    for (int64_t e = 0; deg + e < k_max; ++e) {
        if (e > 0) cur = rvec_mul(cur, gens[i]);
        monomial_rvecs(gens, i + 1, deg + e, k_max, cur, out);
    }
}

std::vector<int64_t> hilbert_samuel(const std::vector<BitMatrix>& gens,
                                    const std::vector<std::vector<uint64_t>>& rows,
                                    int64_t k_max) {
    if (gens.empty()) throw InvalidIndex("hilbert_samuel needs generators");
    const int64_t D = gens[0].rows;
    std::vector<uint64_t> e1(static_cast<size_t>(nwords(D)), 0);
    set_bit(e1, 1);
    std::vector<std::pair<int64_t, std::vector<uint64_t>>> rvecs;
    monomial_rvecs(gens, 0, 0, k_max, e1, rvecs);

    const int64_t dim_s = static_cast<int64_t>(rows.size());
    std::vector<int64_t> h(static_cast<size_t>(k_max) + 1, 0);
    for (int64_t k = 1; k <= k_max; ++k) {
        int64_t nr = 0;
        for (const auto& [deg, rv] : rvecs)
            if (deg < k) ++nr;
        BitMatrix P(nr, dim_s);
        int64_t r = 0;
        for (const auto& [deg, rv] : rvecs) {
            if (deg >= k) continue;
            for (int64_t j = 0; j < dim_s; ++j)
                if (dot_bits(rv.data(), rows[static_cast<size_t>(j)],
                             static_cast<int64_t>(rv.size())))
                    P.set(r, j, 1);
            ++r;
        }
        h[static_cast<size_t>(k)] = rank(P);
    }
    return h;
}

// ---------------------------------------------------------------------------
// the Frobenius witness

// One monomial in the generators, tracked as an exponent vector (the
// operators commute, so that determines the matrix).
struct FrobMono {
    std::vector<int64_t> exps;
    int64_t deg = 0;
    BitMatrix mat;
};

// The witness is a power series in the generators, so the depth a truncation
// needs grows with the window and no fixed degree cap is honest. What IS
// finite is the span of all generator monomials as matrices on the window:
// grow that span to closure and let the solver cut the witness out of it.
static std::vector<FrobMono> monomial_span_basis(const PolyAlgebra& alg,
                                                 const std::vector<OpSpec>& tgens) {
    const int64_t D = alg.D;
    std::vector<BitMatrix> gmats;
    gmats.reserve(tgens.size());
    for (const OpSpec& g : tgens) gmats.push_back(alg.op_matrix(g));

    // Incremental echelon over flattened matrices. A BitMatrix keeps its
    // rows padded to whole words with the padding bits zero, so the raw
    // word vector works directly as the span element.
    struct SpanRow {
        std::vector<uint64_t> v;
        int64_t pivot;
    };
    std::vector<SpanRow> span;
    auto enlarges = [&](const std::vector<uint64_t>& flat) -> bool {
        std::vector<uint64_t> v = flat;
        for (const SpanRow& r : span)
            if (get_bit(v, r.pivot)) xor_into(v, r.v);
        if (all_zero(v)) return false;
        int64_t p = lowest_set(v);
        auto it = std::lower_bound(
            span.begin(), span.end(), p,
            [](const SpanRow& r, int64_t q) { return r.pivot < q; });
        span.insert(it, SpanRow{std::move(v), p});
        return true;
    };

    const size_t cap = static_cast<size_t>(4 * D + 64);
    std::vector<FrobMono> basis;
    basis.push_back({std::vector<int64_t>(tgens.size(), 0), 0, BitMatrix::identity(D)});
    enlarges(basis[0].mat.w);
    // The basis doubles as the work queue: a product that lands inside the
    // span adds nothing new, because every basis element times a generator
    // is enumerated anyway.
    for (size_t i = 0; i < basis.size(); ++i) {
        for (size_t g = 0; g < gmats.size(); ++g) {
            BitMatrix prod = mul(basis[i].mat, gmats[g]);
            if (!enlarges(prod.w)) continue;
            if (basis.size() >= cap)
                throw InsufficientScale(
                    "hecke algebra span did not close within the window budget");
            FrobMono next;
            next.exps = basis[i].exps;
            next.exps[g] += 1;
            next.deg = basis[i].deg + 1;
            next.mat = std::move(prod);
            basis.push_back(std::move(next));
        }
    }
    return basis;
}

OperatorExpr solve_frobenius(const PolyAlgebra& alg, const std::vector<OpSpec>& tgens) {
    const int64_t D = alg.D;
    const BitMatrix& u = alg.op_matrix(op_u(alg.level));
    BitMatrix rhs_mat = add(mul(u, u), BitMatrix::identity(D));

    std::vector<FrobMono> basis = monomial_span_basis(alg, tgens);

    // Prefer a witness with every term of degree at least two; fall back to
    // allowing linear terms. The constant monomial is never offered, so the
    // witness always lies in the maximal ideal.
    for (int64_t min_deg : {2, 1}) {
        std::vector<std::pair<std::vector<int64_t>, BitMatrix>> monos;
        for (const FrobMono& m : basis)
            if (m.deg >= min_deg) monos.emplace_back(m.exps, m.mat);

        const int64_t nu = static_cast<int64_t>(monos.size());
        // One equation per matrix entry of the candidate identity X U = U^2 + 1,
        // flat over the padded word layout (padding bits are zero on both sides).
        const int64_t fbits = static_cast<int64_t>(rhs_mat.w.size()) * 64;
        BitMatrix eq(fbits, nu);
        for (int64_t c = 0; c < nu; ++c) {
            BitMatrix a = mul(monos[static_cast<size_t>(c)].second, u);
            for (size_t k = 0; k < a.w.size(); ++k) {
                uint64_t word = a.w[k];
                while (word) {
                    int t = std::countr_zero(word);
                    word &= word - 1;
                    eq.set(static_cast<int64_t>(k) * 64 + t, c, 1);
                }
            }
        }

        auto sol = solve(eq, rhs_mat.w);
        if (!sol) continue;

        OperatorExpr expr;
        BitMatrix xmat(D, D);
        for (int64_t c = 0; c < nu; ++c) {
            if (!get_bit(*sol, c)) continue;
            OpProduct p;
            for (size_t i = 0; i < tgens.size(); ++i)
                p.insert(p.end(),
                         static_cast<size_t>(monos[static_cast<size_t>(c)].first[i]),
                         tgens[i]);
            expr.terms.push_back(std::move(p));
            xmat = add(xmat, monos[static_cast<size_t>(c)].second);
        }
        normalize(expr.terms);
        if (!(mul(xmat, u) == rhs_mat))
            throw InsufficientScale("frobenius witness failed the full matrix check");
        return expr;
    }
    throw InsufficientScale(
        "no frobenius witness in the span of the given hecke generators");
}

}  // namespace hecke_f2
