#include "conekit/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace conekit {

Rat make_rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string vec_to_string(const QVec& v) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << rat_to_string(v[i]);
    }
    os << "]";
    return os.str();
}

QVec vec_from_strings(const std::vector<std::string>& parts) {
    QVec v;
    v.reserve(parts.size());
    for (const auto& p : parts) v.push_back(rat_from_string(p));
    return v;
}

bool is_zero(const QVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

QVec vec_neg(const QVec& v) {
    QVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

QVec vec_add(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

QVec vec_sub(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

QVec vec_scale(const Rat& c, const QVec& v) {
    QVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

Rat dot(const QVec& a, const QVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVec primitive(const QVec& v) {
    if (is_zero(v)) return v;
    mpz_class den_lcm = 1;
    for (const auto& x : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class num_gcd = 0;
    for (const auto& x : v) {
        mpz_class scaled_num = x.get_num() * (den_lcm / x.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled_num.get_mpz_t());
    }
    Rat factor(den_lcm, num_gcd);
    factor.canonicalize();
    return vec_scale(factor, v);
}

std::vector<QVec> primitive_jointly(const std::vector<QVec>& vs) {
    QVec flat;
    for (const auto& v : vs) flat.insert(flat.end(), v.begin(), v.end());
    if (is_zero(flat)) return vs;
    QVec scaled = primitive(flat);
    size_t k = 0;
    while (flat[k] == 0) ++k;
    Rat factor = scaled[k] / flat[k];
    std::vector<QVec> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(vec_scale(factor, v));
    return out;
}

std::optional<Rat> positive_parallel_ratio(const QVec& u, const QVec& v) {
    if (u.size() != v.size() || is_zero(u)) return std::nullopt;
    size_t k = 0;
    while (u[k] == 0) ++k;
    Rat c = v[k] / u[k];
    if (c <= 0) return std::nullopt;
    for (size_t i = 0; i < u.size(); ++i)
        if (v[i] != c * u[i]) return std::nullopt;
    return c;
}

bool same_ray(const QVec& v, const QVec& w) {
    if (is_zero(v) || is_zero(w)) return is_zero(v) && is_zero(w);
    return positive_parallel_ratio(v, w).has_value();
}

mpz_class round_nearest(const Rat& x) {
    Rat shifted = x + make_rat(1, 2);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
    return q;
}

}  // namespace conekit
