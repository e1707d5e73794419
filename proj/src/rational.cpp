#include "setvar/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace setvar {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) != 0;
    });
}

mpz_class parse_integer(std::string_view s) {
    std::string_view body = s;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (!all_digits(body)) throw ParseError("malformed integer '" + std::string(s) + "'");
    mpz_class z(std::string(body), 10);
    return negative ? mpz_class(-z) : z;
}

}  // namespace

Rat parse_rat(std::string_view text) {
    if (text.empty()) throw ParseError("empty rational");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(text.substr(0, slash));
        std::string_view den_text = text.substr(slash + 1);
        if (!all_digits(den_text)) throw ParseError("malformed denominator in '" + std::string(text) + "'");
        mpz_class den(std::string(den_text), 10);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        Rat r(num, den);
        r.canonicalize();
        return r;
    }
    // decimal with optional exponent
    std::string_view mant = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mant = text.substr(0, e);
        std::string exp_text(text.substr(e + 1));
        try {
            std::size_t used = 0;
            exponent = std::stol(exp_text, &used);
            if (used != exp_text.size()) throw ParseError("bad exponent");
        } catch (const std::exception&) {
            throw ParseError("malformed exponent in '" + std::string(text) + "'");
        }
    }
    bool negative = false;
    if (!mant.empty() && (mant.front() == '-' || mant.front() == '+')) {
        negative = mant.front() == '-';
        mant.remove_prefix(1);
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = mant.find('.'); dot != std::string_view::npos) {
        std::string_view ip = mant.substr(0, dot), fp = mant.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
            throw ParseError("malformed number '" + std::string(text) + "'");
        digits = std::string(ip) + std::string(fp);
        frac_len = static_cast<long>(fp.size());
    } else {
        if (!all_digits(mant)) throw ParseError("malformed number '" + std::string(text) + "'");
        digits = std::string(mant);
    }
    mpz_class num(digits, 10);
    if (negative) num = -num;
    long shift = exponent - frac_len;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Rat r = shift >= 0 ? Rat(num * p10) : Rat(num, p10);
    r.canonicalize();
    return r;
}

Rat ratio(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Vec& v, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += to_string(v[i]);
    }
    return out;
}

double to_double(const Rat& r) { return r.get_d(); }

std::string to_decimal(const Rat& r, int significant) {
    // mpf keeps enough precision for the big numerators produced by long
    // reachability runs; plain get_d() would be fine but loses digits.
    mpf_class f(r, 256);
    std::ostringstream os;
    mp_exp_t exp = 0;
    std::string digits = f.get_str(exp, 10, static_cast<std::size_t>(significant));
    bool negative = false;
    if (!digits.empty() && digits.front() == '-') {
        negative = true;
        digits.erase(digits.begin());
    }
    if (digits.empty()) return "0";
    std::string out;
    if (exp <= 0) {
        out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + digits;
    } else if (static_cast<std::size_t>(exp) >= digits.size()) {
        out = digits + std::string(static_cast<std::size_t>(exp) - digits.size(), '0');
    } else {
        out = digits.substr(0, static_cast<std::size_t>(exp)) + "." + digits.substr(static_cast<std::size_t>(exp));
    }
    return negative ? "-" + out : out;
}

Vec zeros(std::size_t n) { return Vec(n, Rat(0)); }

Vec unit(std::size_t n, std::size_t i) {
    Vec v = zeros(n);
    v[i] = 1;
    return v;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return sgn(x) == 0; });
}

Rat dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
    return s;
}

Rat norm2(const Vec& v) { return dot(v, v); }

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("add: length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("sub: length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scale(const Vec& a, const Rat& s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

Vec neg(const Vec& a) { return scale(a, Rat(-1)); }

Vec axpy(const Vec& a, const Rat& s, const Vec& b) {
    if (a.size() != b.size()) throw DimensionError("axpy: length mismatch");
    Vec r = a;
    if (sgn(s) == 0) return r;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(b[i]) != 0) r[i] += s * b[i];
    return r;
}

Vec concat(const Vec& a, const Vec& b) {
    Vec r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Vec select(const Vec& v, const std::vector<int>& idx) {
    Vec r;
    r.reserve(idx.size());
    for (int i : idx) r.push_back(v.at(static_cast<std::size_t>(i)));
    return r;
}

Vec primitive(const Vec& v) {
    if (is_zero(v)) return v;
    mpz_class l = 1, g = 0;
    for (const Rat& x : v) {
        if (sgn(x) == 0) continue;
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        mpz_class num = v[i].get_num() * (l / v[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
        r[i] = Rat(num);
    }
    if (g > 1)
        for (Rat& x : r) x = Rat(mpz_class(x.get_num() / g));
    return r;
}

Vec primitive_signed(const Vec& v) {
    Vec r = primitive(v);
    for (const Rat& x : r) {
        if (sgn(x) == 0) continue;
        if (sgn(x) < 0) r = neg(r);
        break;
    }
    return r;
}

Rref rref(Matrix rows, int ncols) {
    Rref out;
    std::size_t r = 0;
    for (int c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && sgn(rows[piv][static_cast<std::size_t>(c)]) == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        Rat inv = 1 / rows[r][static_cast<std::size_t>(c)];
        rows[r] = scale(rows[r], inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r) continue;
            Rat f = rows[i][static_cast<std::size_t>(c)];
            if (sgn(f) != 0) rows[i] = axpy(rows[i], -f, rows[r]);
        }
        out.pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

int rank(const Matrix& rows, int ncols) { return static_cast<int>(rref(rows, ncols).rows.size()); }

Matrix null_space(const Matrix& rows, int ncols) {
    Rref R = rref(rows, ncols);
    std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
    for (int p : R.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    Matrix basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        Vec v = zeros(static_cast<std::size_t>(ncols));
        v[static_cast<std::size_t>(f)] = 1;
        for (std::size_t i = 0; i < R.rows.size(); ++i)
            v[static_cast<std::size_t>(R.pivots[i])] = -R.rows[i][static_cast<std::size_t>(f)];
        basis.push_back(primitive(v));
    }
    return basis;
}

Vec reduce_mod(const Vec& v, const Rref& basis) {
    Vec r = v;
    for (std::size_t i = 0; i < basis.rows.size(); ++i) {
        Rat f = r[static_cast<std::size_t>(basis.pivots[i])];
        if (sgn(f) != 0) r = axpy(r, -f, basis.rows[i]);
    }
    return r;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b, int ncols) {
    Matrix aug;
    aug.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Vec row = a[i];
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    Rref R = rref(aug, ncols + 1);
    Vec z = zeros(static_cast<std::size_t>(ncols));
    for (std::size_t i = 0; i < R.rows.size(); ++i) {
        if (R.pivots[i] == ncols) return std::nullopt;
        z[static_cast<std::size_t>(R.pivots[i])] = R.rows[i][static_cast<std::size_t>(ncols)];
    }
    return z;
}

Vec mat_vec(const Matrix& m, const Vec& v) {
    Vec r;
    r.reserve(m.size());
    for (const Vec& row : m) r.push_back(dot(row, v));
    return r;
}

Matrix transpose(const Matrix& m, int ncols) {
    Matrix t(static_cast<std::size_t>(ncols), zeros(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (int j = 0; j < ncols; ++j) t[static_cast<std::size_t>(j)][i] = m[i][static_cast<std::size_t>(j)];
    return t;
}

Matrix identity(int n) {
    Matrix m;
    for (int i = 0; i < n; ++i) m.push_back(unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i)));
    return m;
}

bool lex_less(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Rat& x, const Rat& y) { return cmp(x, y) < 0; });
}

}  // namespace setvar
