#include "hecke_f2/recur.hpp"

#include <sstream>

#include "hecke_f2/errors.hpp"
#include "hecke_f2/genforms.hpp"

namespace hecke_f2 {

int PolyCoord::get(int64_t i) const {
    if (i < 0 || i >= dim) throw InvalidIndex("PolyCoord::get: index out of range");
    return get_bit(bits, i);
}

void PolyCoord::set(int64_t i, int b) {
    if (i < 0 || i >= dim) throw InvalidIndex("PolyCoord::set: index out of range");
    set_bit(bits, i, b);
}

PolyCoord pc_add(const PolyCoord& a, const PolyCoord& b) {
    if (a.dim != b.dim) throw InvalidIndex("pc_add: dimension mismatch");
    PolyCoord r = a;
    xor_into(r.bits, b.bits);
    return r;
}

PolyCoord pc_shift(const PolyCoord& a, int64_t s) {
    if (s < 0) throw InvalidIndex("pc_shift: negative shift");
    int64_t d = a.deg();
    if (d >= 0 && d + s >= a.dim)
        throw InvalidIndex("pc_shift: coordinate overflow (deg " + std::to_string(d) +
                           " shifted by " + std::to_string(s) + " exceeds dim " +
                           std::to_string(a.dim) + ")");
    PolyCoord r(a.dim);
    xor_shifted(r.bits, a.bits, s, a.dim);
    return r;
}

PolyCoord pc_mul_mask(const PolyCoord& a, uint64_t ymask) {
    PolyCoord r(a.dim);
    while (ymask) {
        int s = std::countr_zero(ymask);
        ymask &= ymask - 1;
        r = pc_add(r, pc_shift(a, s));
    }
    return r;
}

PolyCoord pc_resize(const PolyCoord& a, int64_t dim) {
    if (dim < 1) throw InvalidIndex("pc_resize: dim must be >= 1");
    if (a.deg() >= dim)
        throw InvalidIndex("pc_resize: set coordinate beyond new dimension");
    PolyCoord r(dim);
    for (size_t k = 0; k < r.bits.size() && k < a.bits.size(); ++k) r.bits[k] = a.bits[k];
    mask_tail(r.bits, dim);
    return r;
}

std::vector<QExpansion> gen_powers(const QExpansion& gen, int64_t n) {
    std::vector<QExpansion> pows;
    pows.reserve(static_cast<size_t>(n + 1));
    pows.push_back(qone(gen.prec));
    for (int64_t i = 1; i <= n; ++i) pows.push_back(mul(pows.back(), gen));
    return pows;
}

PolyCoord from_qexpansion(const QExpansion& f, const std::vector<QExpansion>& pows,
                          int64_t max_deg) {
    if (max_deg < 0) throw InvalidIndex("from_qexpansion: negative degree bound");
    if ((int64_t)pows.size() <= max_deg)
        throw InvalidIndex("from_qexpansion: not enough generator powers");
    if (f.prec <= max_deg)
        throw InsufficientPrecision("from_qexpansion: precision " + std::to_string(f.prec) +
                                    " too small for degree bound " + std::to_string(max_deg));
    // gen = q + O(q^2) makes gen^n = q^n + O(q^{n+1}): peel off the lowest
    // term of the residual at each step.
    QExpansion res = truncate(f, f.prec);
    for (const auto& p : pows)
        if (p.prec < f.prec)
            throw InsufficientPrecision("from_qexpansion: generator powers too short");
    PolyCoord c(max_deg + 1);
    for (;;) {
        int64_t t = res.order();
        if (t < 0) break;
        if (t > max_deg)
            throw NotInAlgebra("from_qexpansion: residual starts at q^" + std::to_string(t) +
                               ", beyond degree bound " + std::to_string(max_deg),
                               t);
        c.set(t, 1);
        res = add(res, truncate(pows[static_cast<size_t>(t)], f.prec));
    }
    return c;
}

PolyCoord from_qexpansion(const QExpansion& f, const QExpansion& gen, int64_t max_deg) {
    if (gen.prec < 2 || gen.coeff(0) != 0 || gen.coeff(1) != 1)
        throw InvalidIndex("from_qexpansion: generator must be q + O(q^2)");
    return from_qexpansion(f, gen_powers(truncate(gen, f.prec), max_deg), max_deg);
}

QExpansion qexp_of(const PolyCoord& c, const std::vector<QExpansion>& pows) {
    if (c.deg() >= (int64_t)pows.size())
        throw InvalidIndex("qexp_of: not enough generator powers");
    QExpansion r = qzero(pows.empty() ? 1 : pows[0].prec);
    for (int64_t i = 0; i < c.dim; ++i)
        if (get_bit(c.bits, i)) r = add(r, pows[static_cast<size_t>(i)]);
    return r;
}

static std::string ypoly_text(uint64_t mask) {
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < 64; ++i) {
        if (!(mask >> i & 1)) continue;
        if (!first) out << " + ";
        first = false;
        if (i == 0)
            out << "1";
        else if (i == 1)
            out << "y";
        else
            out << "y^" << i;
    }
    return out.str();
}

std::string to_text(const CompanionPoly& cp) {
    std::ostringstream out;
    out << "X^" << cp.order;
    for (int64_t j = 1; j <= cp.order; ++j) {
        uint64_t mask = cp.a[static_cast<size_t>(j)];
        if (!mask) continue;
        out << " + ";
        bool multi = (mask & (mask - 1)) != 0;
        int64_t xp = cp.order - j;
        std::string coef = ypoly_text(mask);
        if (xp == 0) {
            out << coef;
        } else {
            out << (multi ? "(" + coef + ")" : coef) << "*X";
            if (xp > 1) out << "^" << xp;
        }
    }
    return out.str();
}

namespace {

int64_t op_param(const OpSpec& op) {
    switch (op.kind) {
        case OpKind::TEll:
        case OpKind::UOp: return op.m;
        default: throw InvalidIndex("companion recurrences cover T_ell and U operators only");
    }
}

// Operator images s_n = op(f^n) as exact polynomial coordinates, n = 0..n_top,
// each with dim coordinates, all computed directly from q-expansions.
std::vector<PolyCoord> oracle_images(const OpSpec& op, int64_t level, int64_t n_top,
                                     int64_t dim) {
    int64_t param = op_param(op);
    int64_t prec = param * (std::max(n_top, dim) + 8);
    QExpansion gen = gen_qexp(level, prec);
    std::vector<QExpansion> pows = gen_powers(gen, n_top);
    int64_t out_prec = hecke_out_prec(prec, param);
    std::vector<QExpansion> out_pows = gen_powers(truncate(gen, out_prec), dim - 1);
    std::vector<PolyCoord> s;
    s.reserve(static_cast<size_t>(n_top + 1));
    for (int64_t n = 0; n <= n_top; ++n) {
        QExpansion img = apply_op(op, pows[static_cast<size_t>(n)]);
        PolyCoord c = pc_resize(from_qexpansion(img, out_pows, dim - 1), dim);
        if (c.deg() > n)
            throw NotInAlgebra("operator image of f^" + std::to_string(n) +
                               " has degree " + std::to_string(c.deg()),
                               c.deg());
        s.push_back(std::move(c));
    }
    return s;
}

// Check s_n == sum_j a_j(y) s_{n-j} for all n in (lo, hi]; -1 if all pass.
int64_t first_recurrence_failure(const CompanionPoly& cp, const std::vector<PolyCoord>& s,
                                 int64_t lo, int64_t hi) {
    for (int64_t n = lo + 1; n <= hi; ++n) {
        PolyCoord acc(s[static_cast<size_t>(n)].dim);
        for (int64_t j = 1; j <= cp.order; ++j)
            acc = pc_add(acc, pc_mul_mask(s[static_cast<size_t>(n - j)], cp.a[static_cast<size_t>(j)]));
        if (!(acc == s[static_cast<size_t>(n)])) return n;
    }
    return -1;
}

}  // namespace

CompanionPoly derive_companion(const OpSpec& op, int64_t level, int64_t d_max) {
    if (d_max < 1) throw InvalidIndex("derive_companion: d_max must be >= 1");
    require_level(level);
    int64_t n_top = 4 * d_max + 4;
    int64_t dim = n_top + 4;
    std::vector<PolyCoord> s = oracle_images(op, level, n_top, dim);

    for (int64_t d = 1; d <= d_max; ++d) {
        // Unknowns u_{j,i}: coefficient of y^i in a_j, 0 <= i <= j <= d.
        std::vector<std::pair<int64_t, int64_t>> unknowns;
        for (int64_t j = 1; j <= d; ++j)
            for (int64_t i = 0; i <= j; ++i) unknowns.emplace_back(j, i);
        int64_t U = static_cast<int64_t>(unknowns.size());

        int64_t lo = d, hi = 2 * d + 2;  // solve window
        std::vector<int64_t> ns;
        for (int64_t n = lo + 1; n <= std::min(hi, n_top); ++n) ns.push_back(n);
        int64_t rows = 0;
        for (int64_t n : ns) rows += n + 2;
        BitMatrix A(rows, U);
        std::vector<uint64_t> b(static_cast<size_t>(nwords(rows)), 0);
        int64_t r0 = 0;
        for (int64_t n : ns) {
            // Bit t of the identity: s_n[t] = sum u_{j,i} * s_{n-j}[t-i].
            for (int64_t u = 0; u < U; ++u) {
                auto [j, i] = unknowns[static_cast<size_t>(u)];
                const PolyCoord& src = s[static_cast<size_t>(n - j)];
                for (int64_t t = i; t <= n + 1; ++t)
                    if (t - i < src.dim && src.get(t - i)) A.set(r0 + t, u, 1);
            }
            for (int64_t t = 0; t <= n + 1; ++t)
                if (s[static_cast<size_t>(n)].get(t)) set_bit(b, r0 + t, 1);
            r0 += n + 2;
        }
        auto x = solve(A, b);
        if (!x) continue;

        // The solve window may under-determine the fit (typically because the
        // operator kills all the low powers, leaving zero rows). Walk the
        // whole solution coset as long as it is small; a candidate counts
        // only if its leading coefficient has full degree and the recurrence
        // holds on every computed image beyond the solve window. When the
        // coset is too big the window taught us nothing at this order, and a
        // wider window at the next order settles it.
        BitMatrix ker = kernel(A);
        if (ker.rows > 12) continue;
        for (uint64_t pick = 0; pick < (uint64_t{1} << ker.rows); ++pick) {
            std::vector<uint64_t> cand = *x;
            for (int64_t kr = 0; kr < ker.rows; ++kr)
                if ((pick >> kr) & 1) xor_into(cand, ker.row_copy(kr));

            CompanionPoly cp;
            cp.order = d;
            cp.a.assign(static_cast<size_t>(d + 1), 0);
            for (int64_t u = 0; u < U; ++u) {
                auto [j, i] = unknowns[static_cast<size_t>(u)];
                if (get_bit(cand, u)) cp.a[static_cast<size_t>(j)] |= uint64_t{1} << i;
            }
            uint64_t lead = cp.a[static_cast<size_t>(d)];
            int lead_deg = lead ? 63 - std::countl_zero(lead) : -1;
            if (lead_deg != d) continue;
            if (first_recurrence_failure(cp, s, hi, n_top) >= 0) continue;
            return cp;
        }
    }
    throw NoRecurrenceFound("no companion recurrence of order <= " + std::to_string(d_max));
}

RecurrenceCheck verify_recurrence(const CompanionPoly& cp, const OpSpec& op, int64_t level,
                                  int64_t n_max) {
    if (n_max <= cp.order)
        throw InvalidIndex("verify_recurrence: n_max must exceed the order");
    std::vector<PolyCoord> s = oracle_images(op, level, n_max, n_max + 4);
    RecurrenceCheck rc;
    rc.first_fail = first_recurrence_failure(cp, s, cp.order, n_max);
    rc.ok = rc.first_fail < 0;
    return rc;
}

BitMatrix hecke_matrix(const CompanionPoly& cp, const OpSpec& op, int64_t level, int64_t D) {
    if (D < 1) throw InvalidIndex("hecke_matrix: D must be >= 1");
    int64_t seed_top = std::min(cp.order, D - 1);
    std::vector<PolyCoord> col = oracle_images(op, level, seed_top, D);
    col.resize(static_cast<size_t>(D), PolyCoord(D));
    for (int64_t n = seed_top + 1; n < D; ++n) {
        PolyCoord acc(D);
        for (int64_t j = 1; j <= cp.order; ++j)
            acc = pc_add(acc, pc_mul_mask(col[static_cast<size_t>(n - j)], cp.a[static_cast<size_t>(j)]));
        if (acc.deg() > n)
            throw NotInAlgebra("hecke_matrix: column " + std::to_string(n) +
                               " exceeds its degree bound",
                               acc.deg());
        col[static_cast<size_t>(n)] = std::move(acc);
    }
    BitMatrix m(D, D);
    for (int64_t n = 0; n < D; ++n)
        for (int64_t i = 0; i <= std::min(n, D - 1); ++i)
            if (col[static_cast<size_t>(n)].get(i)) m.set(i, n, 1);
    return m;
}

}  // namespace hecke_f2
