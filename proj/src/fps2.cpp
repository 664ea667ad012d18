#include "hecke_f2/fps2.hpp"

#include <algorithm>
#include <sstream>

#include "hecke_f2/errors.hpp"

namespace hecke_f2 {

QExpansion::QExpansion(int64_t p) {
    if (p < 1) throw InvalidIndex("QExpansion: precision must be >= 1");
    prec = p;
    bits.assign(static_cast<size_t>(nwords(p)), 0);
}

int QExpansion::coeff(int64_t i) const {
    if (i < 0) throw InvalidIndex("coeff: negative index");
    if (i >= prec)
        throw IndexBeyondPrecision("coeff: index " + std::to_string(i) +
                                   " >= precision " + std::to_string(prec));
    return get_bit(bits, i);
}

void QExpansion::set_coeff(int64_t i, int b) {
    if (i < 0) throw InvalidIndex("set_coeff: negative index");
    if (i >= prec)
        throw IndexBeyondPrecision("set_coeff: index " + std::to_string(i) +
                                   " >= precision " + std::to_string(prec));
    set_bit(bits, i, b);
}

QExpansion qzero(int64_t prec) { return QExpansion(prec); }

QExpansion qone(int64_t prec) {
    QExpansion r(prec);
    r.set_coeff(0, 1);
    return r;
}

QExpansion qpow_monomial(int64_t n, int64_t prec) {
    if (n < 0) throw InvalidIndex("qpow_monomial: negative exponent");
    QExpansion r(prec);
    if (n < prec) r.set_coeff(n, 1);
    return r;
}

QExpansion add(const QExpansion& a, const QExpansion& b) {
    QExpansion r(std::min(a.prec, b.prec));
    for (size_t k = 0; k < r.bits.size(); ++k) r.bits[k] = a.bits[k] ^ b.bits[k];
    mask_tail(r.bits, r.prec);
    return r;
}

QExpansion mul(const QExpansion& a, const QExpansion& b) {
    QExpansion r(std::min(a.prec, b.prec));
    // Shift-and-xor over the set bits of the sparser operand.
    const QExpansion& s = (popcount_words(a.bits) <= popcount_words(b.bits)) ? a : b;
    const QExpansion& t = (&s == &a) ? b : a;
    for (size_t kw = 0; kw < s.bits.size(); ++kw) {
        uint64_t word = s.bits[kw];
        while (word) {
            int64_t i = static_cast<int64_t>(kw) * 64 + std::countr_zero(word);
            word &= word - 1;
            if (i >= r.prec) break;
            xor_shifted(r.bits, t.bits, i, r.prec);
        }
    }
    return r;
}

QExpansion pow(const QExpansion& a, int64_t e) {
    if (e < 0) throw InvalidIndex("pow: negative exponent");
    QExpansion acc = qone(a.prec);
    QExpansion base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return acc;
}

QExpansion substitute_qpow(const QExpansion& a, int64_t m) {
    if (m < 1) throw InvalidIndex("substitute_qpow: m must be >= 1");
    if (m == 1) return a;
    QExpansion r(a.prec * m);
    for (size_t kw = 0; kw < a.bits.size(); ++kw) {
        uint64_t word = a.bits[kw];
        while (word) {
            int64_t i = static_cast<int64_t>(kw) * 64 + std::countr_zero(word);
            word &= word - 1;
            set_bit(r.bits, i * m, 1);
        }
    }
    return r;
}

QExpansion truncate(const QExpansion& a, int64_t prec) {
    if (prec > a.prec)
        throw InsufficientPrecision("truncate: cannot extend precision " +
                                    std::to_string(a.prec) + " to " + std::to_string(prec));
    QExpansion r(prec);
    for (size_t k = 0; k < r.bits.size(); ++k) r.bits[k] = a.bits[k];
    mask_tail(r.bits, prec);
    return r;
}

bool eq_to_prec(const QExpansion& a, const QExpansion& b, int64_t P) {
    if (P < 1) throw InvalidIndex("eq_to_prec: P must be >= 1");
    if (a.prec < P || b.prec < P)
        throw InsufficientPrecision("eq_to_prec: operands know " + std::to_string(a.prec) +
                                    " and " + std::to_string(b.prec) +
                                    " coefficients, need " + std::to_string(P));
    return truncate(a, P) == truncate(b, P);
}

std::string terms_string(const QExpansion& a, int64_t max_terms) {
    std::ostringstream out;
    int64_t shown = 0;
    for (int64_t i = 0; i < a.prec && shown < max_terms; ++i) {
        if (!get_bit(a.bits, i)) continue;
        if (shown) out << " + ";
        if (i == 0)
            out << "1";
        else if (i == 1)
            out << "q";
        else
            out << "q^" << i;
        ++shown;
    }
    if (shown == 0) out << "0";
    out << " + O(q^" << a.prec << ")";
    return out.str();
}

std::string to_f2qser(const QExpansion& a, const std::string& name, int64_t level) {
    std::ostringstream out;
    out << "F2QSER 1\n";
    out << "name=" << name << " level=" << level << " prec=" << a.prec << "\n";
    int64_t ndigits = (a.prec + 3) / 4;
    static const char* hexd = "0123456789abcdef";
    std::string hex(static_cast<size_t>(ndigits), '0');
    for (int64_t d = 0; d < ndigits; ++d) {
        int v = 0;
        for (int b = 0; b < 4; ++b) {
            int64_t i = d * 4 + b;
            if (i < a.prec && get_bit(a.bits, i)) v |= 1 << b;
        }
        hex[static_cast<size_t>(d)] = hexd[v];
    }
    out << hex << "\n";
    return out.str();
}

F2qserRecord from_f2qser(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "F2QSER 1")
        throw ParseError("F2QSER: bad magic line");
    if (!std::getline(in, line)) throw ParseError("F2QSER: missing header line");

    auto take = [&line](const std::string& key) {
        auto pos = line.find(key + "=");
        if (pos == std::string::npos) throw ParseError("F2QSER: missing field " + key);
        pos += key.size() + 1;
        auto end = line.find(' ', pos);
        return line.substr(pos, end == std::string::npos ? end : end - pos);
    };
    F2qserRecord rec;
    rec.name = take("name");
    try {
        rec.level = std::stoll(take("level"));
        int64_t prec = std::stoll(take("prec"));
        rec.series = QExpansion(prec);
    } catch (const std::invalid_argument&) {
        throw ParseError("F2QSER: malformed integer field");
    }
    if (!std::getline(in, line)) throw ParseError("F2QSER: missing data line");
    int64_t ndigits = (rec.series.prec + 3) / 4;
    if ((int64_t)line.size() != ndigits)
        throw ParseError("F2QSER: expected " + std::to_string(ndigits) + " hex digits, got " +
                         std::to_string(line.size()));
    for (int64_t d = 0; d < ndigits; ++d) {
        char c = line[static_cast<size_t>(d)];
        int v;
        if (c >= '0' && c <= '9')
            v = c - '0';
        else if (c >= 'a' && c <= 'f')
            v = c - 'a' + 10;
        else
            throw ParseError("F2QSER: non-hex digit");
        for (int b = 0; b < 4; ++b) {
            int64_t i = d * 4 + b;
            if (v & (1 << b)) {
                if (i >= rec.series.prec) throw ParseError("F2QSER: set bit beyond precision");
                rec.series.set_coeff(i, 1);
            }
        }
    }
    return rec;
}

}  // namespace hecke_f2
