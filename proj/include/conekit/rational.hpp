#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace conekit {

using Rat = mpq_class;
using QVec = std::vector<Rat>;

/// Construct a reduced rational with positive denominator.
Rat make_rat(long num, long den = 1);

/// Parse "p", "-p", or "p/q" (q > 0 after reduction). Throws std::invalid_argument.
Rat rat_from_string(const std::string& s);

/// Render as "p" when the denominator is 1, otherwise "p/q".
std::string rat_to_string(const Rat& r);

std::string vec_to_string(const QVec& v);

QVec vec_from_strings(const std::vector<std::string>& parts);

bool is_zero(const QVec& v);

QVec vec_neg(const QVec& v);
QVec vec_add(const QVec& a, const QVec& b);
QVec vec_sub(const QVec& a, const QVec& b);
QVec vec_scale(const Rat& c, const QVec& v);
Rat dot(const QVec& a, const QVec& b);

/// Scale a nonzero rational vector to integer entries with content 1,
/// preserving direction. The zero vector passes through.
QVec primitive(const QVec& v);

/// Scale a whole family of vectors by one positive rational so the combined
/// entry set becomes integer with content 1 (norm balls are scale-free).
std::vector<QVec> primitive_jointly(const std::vector<QVec>& vs);

/// If v == c*u for a single rational c > 0, return c.
std::optional<Rat> positive_parallel_ratio(const QVec& u, const QVec& v);

/// True when v and w generate the same ray (positive multiples).
bool same_ray(const QVec& v, const QVec& w);

/// Nearest integer, rounding halves toward +infinity.
mpz_class round_nearest(const Rat& x);

}  // namespace conekit
