#pragma once

#include "conekit/json_io.hpp"
#include "conekit/orchestrate.hpp"

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace testutil {

using namespace conekit;

inline QVec qv(std::initializer_list<long> xs) {
    QVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

inline std::vector<QVec> qm(std::initializer_list<std::initializer_list<long>> cols) {
    std::vector<QVec> out;
    for (auto c : cols) out.push_back(qv(c));
    return out;
}

inline ReactionNetwork net_of(const std::string& text) {
    return parse_network(text).network;
}

inline std::vector<QVec> figure_of_cert(const Certificate& cert) {
    if (const auto* fig = std::get_if<FigureFoundCert>(&cert)) return fig->figure;
    return {};
}

inline const char* kExample1 = "A + B <=> C\nA <=> B\n2A <=> C\n";
inline const char* kExample2 = "A <=> B + D\nB <=> C\nC <=> D\nC <=> 0\n";
inline const char* kExample3 = "A + B <=> 2C\nA <=> C\nB <=> C\n";
inline const char* kDualityExample = "A <=> B\n0 <=> A + B\nC <=> B\nC <=> A\n";

/// Example 2 text interns species as A,B,D,C; published fixtures list A,B,C,D.
inline QVec ex2v(std::initializer_list<long> abcd) {
    QVec v = qv(abcd);
    std::swap(v[2], v[3]);
    return v;
}

inline std::vector<QVec> ex2m(std::initializer_list<std::initializer_list<long>> cols) {
    std::vector<QVec> out;
    for (auto c : cols) out.push_back(ex2v(c));
    return out;
}

/// Generator-set equality at ray level: mutual conic membership plus matching
/// extreme ray sets up to positive scaling.
inline bool same_cone(const std::vector<QVec>& a, const std::vector<QVec>& b) {
    for (const auto& g : a)
        if (!conic_member(b, g)) return false;
    for (const auto& g : b)
        if (!conic_member(a, g)) return false;
    return true;
}

/// Hull equality through mutual vertex membership.
inline bool same_hull(const std::vector<QVec>& a, const std::vector<QVec>& b) {
    for (const auto& v : a)
        if (!hull_member(b, v)) return false;
    for (const auto& v : b)
        if (!hull_member(a, v)) return false;
    return true;
}

inline bool same_ray_set(const std::vector<QVec>& a, const std::vector<QVec>& b) {
    if (a.size() != b.size()) return false;
    std::vector<char> used(b.size(), 0);
    for (const auto& g : a) {
        bool found = false;
        for (size_t j = 0; j < b.size() && !found; ++j) {
            if (!used[j] && same_ray(g, b[j])) {
                used[j] = 1;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

inline bool same_vector_set(const std::vector<QVec>& a, const std::vector<QVec>& b) {
    if (a.size() != b.size()) return false;
    std::vector<char> used(b.size(), 0);
    for (const auto& v : a) {
        bool found = false;
        for (size_t j = 0; j < b.size() && !found; ++j) {
            if (!used[j] && b[j] == v) {
                used[j] = 1;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed) : gen(seed) {}
    long pick(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(gen);
    }
    QVec vec(size_t n, long lo, long hi) {
        QVec v(n);
        for (auto& x : v) x = Rat(pick(lo, hi));
        return v;
    }
    QVec nonzero_vec(size_t n, long lo, long hi) {
        for (;;) {
            QVec v = vec(n, lo, hi);
            if (!is_zero(v)) return v;
        }
    }
    Rat rat(long lo, long hi, long den_hi) {
        return make_rat(pick(lo, hi), pick(1, den_hi));
    }
};

}  // namespace testutil
