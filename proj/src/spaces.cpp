#include "hecke_f2/spaces.hpp"

#include <sstream>

#include "hecke_f2/errors.hpp"
#include "hecke_f2/genforms.hpp"

namespace hecke_f2 {

PolyCoord PolyAlgebra::coord(const QExpansion& f) const {
    if (f.prec < prec) {
        // Work with what the input knows; from_qexpansion enforces > D-1.
        std::vector<QExpansion> short_pows;
        short_pows.reserve(pows.size());
        for (const auto& p : pows) short_pows.push_back(truncate(p, f.prec));
        return from_qexpansion(f, short_pows, D - 1);
    }
    return from_qexpansion(truncate(f, prec), pows, D - 1);
}

QExpansion PolyAlgebra::qexp(const PolyCoord& c) const { return qexp_of(c, pows); }

QExpansion PolyAlgebra::qexp_bits(const std::vector<uint64_t>& coords) const {
    PolyCoord c(D);
    for (size_t k = 0; k < c.bits.size() && k < coords.size(); ++k) c.bits[k] = coords[k];
    mask_tail(c.bits, D);
    return qexp(c);
}

const CompanionPoly& PolyAlgebra::companion(const OpSpec& op) const {
    auto it = cp_cache.find(op);
    if (it != cp_cache.end()) return it->second;
    int64_t d_max = op.m + 2;
    return cp_cache.emplace(op, derive_companion(op, level, d_max)).first->second;
}

const BitMatrix& PolyAlgebra::op_matrix(const OpSpec& op) const {
    auto it = mat_cache.find(op);
    if (it != mat_cache.end()) return it->second;

    BitMatrix m;
    switch (op.kind) {
        case OpKind::Identity:
            m = BitMatrix::identity(D);
            break;
        case OpKind::Theta:
            m = th;
            break;
        case OpKind::UOp:
            if (op.m == 2) {
                m = u2;
            } else if (op.m == level) {
                m = hecke_matrix(companion(op), op, level, D);
            } else {
                throw InvalidIndex("op_matrix: U_" + std::to_string(op.m) +
                                   " unsupported at level " + std::to_string(level));
            }
            break;
        case OpKind::TEll:
            if (!is_odd_prime(op.m) || op.m == level)
                throw InvalidIndex("op_matrix: T_" + std::to_string(op.m) +
                                   " invalid at level " + std::to_string(level));
            m = hecke_matrix(companion(op), op, level, D);
            break;
        case OpKind::VOp: {
            if (op.m != 2) throw InvalidIndex("op_matrix: only V_2 is materialized");
            m = BitMatrix(D, D);
            for (int64_t n = 0; 2 * n < D; ++n) m.set(2 * n, n, 1);
            break;
        }
    }
    return mat_cache.emplace(op, std::move(m)).first->second;
}

int64_t PolyAlgebra::valid_cols(const OpSpec& op) const {
    switch (op.kind) {
        case OpKind::Theta: return theta_valid;
        case OpKind::VOp: return (D + 1) / 2;
        default: return D;
    }
}

PolyAlgebra make_algebra(int64_t level, int64_t D, int64_t prec) {
    if (prec == 0) prec = std::max<int64_t>(level, 2) * D + 64;
    require_level(level);
    return make_algebra(level, D, prec, gen_qexp(level, prec));
}

PolyAlgebra make_algebra(int64_t level, int64_t D, int64_t prec, QExpansion gen) {
    require_level(level);
    if (D < 8) throw InvalidIndex("make_algebra: D must be >= 8");
    if (prec == 0) prec = std::max<int64_t>(level, 2) * D + 64;
    if (prec < 2 * D + 16 || prec < level * D + 16)
        throw InsufficientScale("make_algebra: precision " + std::to_string(prec) +
                                " below the scale coupling for D = " + std::to_string(D));
    if (gen.prec != prec || gen.coeff(0) != 0 || gen.coeff(1) != 1)
        throw InvalidIndex("make_algebra: generator series does not match the request");
    PolyAlgebra alg;
    alg.level = level;
    alg.D = D;
    alg.prec = prec;
    alg.gen = std::move(gen);
    alg.pows = gen_powers(alg.gen, D - 1);

    // Bootstrap U_2 column by column through q-expansions. U_2 never raises
    // the degree, so every column is exact.
    int64_t u2prec = hecke_out_prec(prec, 2);
    std::vector<QExpansion> upows;
    upows.reserve(static_cast<size_t>(D));
    for (const auto& p : alg.pows) upows.push_back(truncate(p, u2prec));
    alg.u2 = BitMatrix(D, D);
    std::vector<int64_t> u2deg(static_cast<size_t>(D), -1);
    for (int64_t n = 0; n < D; ++n) {
        PolyCoord c = from_qexpansion(u_op(alg.pows[static_cast<size_t>(n)], 2), upows, D - 1);
        if (c.deg() > n)
            throw NotInAlgebra("make_algebra: U_2 raised the degree of f^" + std::to_string(n),
                               c.deg());
        u2deg[static_cast<size_t>(n)] = c.deg();
        for (int64_t i = 0; i <= n; ++i)
            if (c.get(i)) alg.u2.set(i, n, 1);
    }

    // theta = 1 + V_2 U_2, and V_2 is Frobenius: V_2(U_2 f^n) doubles every
    // degree in the U_2 column. A column stays exact while 2 * deg fits.
    alg.th = BitMatrix(D, D);
    alg.theta_valid = D;
    for (int64_t n = 0; n < D; ++n) {
        if (2 * u2deg[static_cast<size_t>(n)] >= D) {
            if (alg.theta_valid == D) alg.theta_valid = n;
            continue;
        }
        alg.th.set(n, n, 1);
        for (int64_t i = 0; i <= u2deg[static_cast<size_t>(n)]; ++i)
            if (alg.u2.get(i, n)) {
                int b = alg.th.get(2 * i, n);
                alg.th.set(2 * i, n, b ^ 1);
            }
    }
    return alg;
}

static int row_label(const PolyAlgebra& alg, const std::vector<uint64_t>& row) {
    QExpansion f = alg.qexp_bits(row);
    int label = -2;
    for (int64_t n = 0; n < f.prec; ++n) {
        if (!get_bit(f.bits, n)) continue;
        int c = static_cast<int>(n & 7);
        if (label == -2)
            label = c;
        else if (label != c)
            return -1;
    }
    return label == -2 ? -1 : label;
}

FormSpace make_space(std::string name, const PolyAlgebra& alg, BitMatrix rows) {
    FormSpace s;
    s.name = std::move(name);
    s.level = alg.level;
    s.D = alg.D;
    s.ech = echelon(rows);
    s.labels.reserve(static_cast<size_t>(s.dim()));
    for (int64_t i = 0; i < s.dim(); ++i) s.labels.push_back(row_label(alg, s.basis_row(i)));
    return s;
}

FormSpace kernel_in_space(std::string name, const PolyAlgebra& alg, const FormSpace& space,
                          const BitMatrix& M) {
    int64_t k = space.dim();
    // Images of the basis vectors, one per matrix column; combos in its kernel
    // are exactly the subspace elements M kills.
    BitMatrix img(M.rows, k);
    for (int64_t i = 0; i < k; ++i) {
        std::vector<uint64_t> y = mat_vec(M, space.basis_row(i));
        for (int64_t r = 0; r < M.rows; ++r)
            if (get_bit(y, r)) img.set(r, i, 1);
    }
    BitMatrix combos = kernel(img);  // rows = combos over the k basis vectors
    BitMatrix rows(combos.rows, space.D);
    for (int64_t r = 0; r < combos.rows; ++r)
        for (int64_t i = 0; i < k; ++i)
            if (combos.get(r, i)) {
                const uint64_t* src = space.ech.mat.row(i);
                uint64_t* dst = rows.row(r);
                for (int64_t w = 0; w < rows.wpr; ++w) dst[w] ^= src[w];
            }
    return make_space(std::move(name), alg, std::move(rows));
}

FormSpace k_space(const PolyAlgebra& alg) {
    return make_space("K(" + std::to_string(alg.level) + ")", alg, kernel(alg.u2));
}

FormSpace theta_image(const PolyAlgebra& alg) {
    BitMatrix rows(std::max<int64_t>(alg.theta_valid - 1, 0), alg.D);
    for (int64_t n = 1; n < alg.theta_valid; ++n)
        for (int64_t i = 0; i < alg.D; ++i)
            if (alg.th.get(i, n)) rows.set(n - 1, i, 1);
    return make_space("theta-image(" + std::to_string(alg.level) + ")", alg, std::move(rows));
}

PolyCoord pc_mul(const PolyCoord& a, const PolyCoord& b) {
    if (a.dim != b.dim) throw InvalidIndex("pc_mul: dimension mismatch");
    int64_t da = a.deg(), db = b.deg();
    if (da >= 0 && db >= 0 && da + db >= a.dim)
        throw InvalidIndex("pc_mul: product degree " + std::to_string(da + db) +
                           " exceeds dimension " + std::to_string(a.dim));
    PolyCoord r(a.dim);
    for (int64_t i = 0; i <= da; ++i)
        if (a.get(i)) xor_shifted(r.bits, b.bits, i, a.dim);
    return r;
}

OldSpace old_space(const PolyAlgebra& alg) {
    if (alg.level == 1) throw InvalidIndex("old_space: level must be 3 or 5");
    QExpansion delta_q = gen_qexp(1, alg.prec);
    OldSpace old;
    old.delta = alg.coord(delta_q);
    old.delta_n = alg.coord(substitute_qpow(gen_qexp(1, hecke_out_prec(alg.prec, alg.level) + 1),
                                            alg.level));
    int64_t d1 = old.delta.deg(), d2 = old.delta_n.deg();

    std::vector<PolyCoord> rows;
    PolyCoord one(alg.D);
    one.set(0, 1);
    rows.push_back(one);
    PolyCoord p = old.delta;
    for (int64_t a = 1; a * d1 <= alg.D - 1; ++a) {
        rows.push_back(p);
        if ((a + 1) * d1 <= alg.D - 1) p = pc_mul(p, old.delta);
    }
    p = old.delta_n;
    for (int64_t a = 1; a * d2 <= alg.D - 1; ++a) {
        rows.push_back(p);
        if ((a + 1) * d2 <= alg.D - 1) p = pc_mul(p, old.delta_n);
    }
    BitMatrix m(static_cast<int64_t>(rows.size()), alg.D);
    for (size_t r = 0; r < rows.size(); ++r) m.row_assign(static_cast<int64_t>(r), rows[r].bits);
    old.space = make_space("old(" + std::to_string(alg.level) + ")", alg, std::move(m));
    return old;
}

static BitMatrix un_plus_one(const PolyAlgebra& alg) {
    return add(alg.op_matrix(op_u(alg.level)), BitMatrix::identity(alg.D));
}

FormSpace vnew_space(const PolyAlgebra& alg) {
    if (alg.level == 1) throw InvalidIndex("vnew_space: level must be 3 or 5");
    return kernel_in_space("Kvnew(" + std::to_string(alg.level) + ")", alg, k_space(alg),
                           un_plus_one(alg));
}

FormSpace new_space(const PolyAlgebra& alg) {
    if (alg.level == 1) throw InvalidIndex("new_space: level must be 3 or 5");
    BitMatrix s = un_plus_one(alg);
    return kernel_in_space("Knew(" + std::to_string(alg.level) + ")", alg, k_space(alg),
                           mul(s, s));
}

PolyCoord un_preimage(const PolyAlgebra& alg, const PolyCoord& f, int64_t i) {
    if (alg.level == 1) throw InvalidIndex("un_preimage: level must be 3 or 5");
    if (i == 0) i = (alg.level == 3) ? 5 : 3;
    if (i == 1 || i == (alg.level & 7) || (i & 1) == 0 || i < 0 || i > 7)
        throw InvalidIndex("un_preimage: class " + std::to_string(i) + " not allowed");
    QExpansion fq = alg.qexp(f);
    QExpansion g = add(graded_part(fq, 1), graded_part(fq, i));
    return alg.coord(g);
}

std::string dump_space_csv(const FormSpace& s) {
    std::ostringstream out;
    out << "row,degree,label";
    for (int64_t c = 0; c < s.D; ++c) out << ",c" << c;
    out << "\n";
    for (int64_t r = 0; r < s.dim(); ++r) {
        std::vector<uint64_t> v = s.basis_row(r);
        out << r << "," << highest_set(v) << "," << s.labels[static_cast<size_t>(r)];
        for (int64_t c = 0; c < s.D; ++c) out << "," << get_bit(v, c);
        out << "\n";
    }
    return out.str();
}

int64_t intersection_dim(const FormSpace& a, const FormSpace& b) {
    if (a.D != b.D) throw InvalidIndex("intersection_dim: dimension mismatch");
    return a.dim() + b.dim() - rank(vstack(a.ech.mat, b.ech.mat));
}

}  // namespace hecke_f2
