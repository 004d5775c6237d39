#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"

namespace epsq {

// A map of finite sets p: T -> B with recorded fibers. Elements are labeled
// strings; constructed sets use deterministic tuple encodings of provenance.
// The isomorphism class is the multiset of fiber cardinalities.
class Covering {
  public:
    Covering() = default;
    static Covering make(std::vector<std::string> base, std::vector<std::string> total,
                         const std::map<std::string, std::string>& projection);
    // canonical labels <base>.<i> for the sheets
    static Covering from_sizes(const std::vector<std::pair<std::string, uint32_t>>& fibers);

    const std::vector<std::string>& base() const { return base_; }
    const std::vector<std::string>& total() const { return total_; }
    size_t project(size_t total_idx) const { return proj_[total_idx]; }
    const std::vector<size_t>& fiber(size_t base_idx) const { return fibers_[base_idx]; }
    std::vector<uint32_t> fiber_sizes() const;        // in base order
    std::vector<uint32_t> fiber_sizes_sorted() const; // the complete invariant

    // covering over T whose fiber at t is p^{-1}(p(t)) - {t}
    Covering derivative() const;
    Covering sum(const Covering& q) const;
    Covering product(const Covering& q) const;
    Covering compose(const Covering& q) const;
    // p(X) -> B with fiber over b the functions fiber_b -> X
    Covering extended_power(const std::vector<std::string>& X) const;

    bool iso(const Covering& q) const { return fiber_sizes_sorted() == q.fiber_sizes_sorted(); }

    // polynomial shadow sum_b x^{n_b} as a coefficient list
    std::vector<long long> poly() const;
    long long poly_eval(long long m) const;

    struct Frame {
        size_t base;
        std::vector<size_t> images; // ordered images of 1..n, as total indices
        std::string label;
    };
    // all frames (b, bijection {1..n} -> fiber_b); error NonConstantSheets
    std::vector<Frame> frames() const;

    std::string json_text() const; // {"base":[...],"fibers":{...}}
    static Covering parse_json(const std::string& text);

  private:
    std::vector<std::string> base_;
    std::vector<std::string> total_;
    std::vector<size_t> proj_;
    std::vector<std::vector<size_t>> fibers_;
    void rebuild_fibers();
};

// polynomial shadow arithmetic (natural-number coefficient lists)
std::vector<long long> poly_add(const std::vector<long long>& a, const std::vector<long long>& b);
std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b);
std::vector<long long> poly_compose(const std::vector<long long>& outer,
                                    const std::vector<long long>& inner);
std::vector<long long> poly_derivative(const std::vector<long long>& a);
long long poly_eval(const std::vector<long long>& a, long long m);

// The canonical bijection (p o q)(X) = p(q(X)), checked element by element.
bool compose_bijection_check(const Covering& p, const Covering& q,
                             const std::vector<std::string>& X);
// Labels of the induced map p(f): p(X) -> p(Y), in enumeration order.
std::vector<std::string> extended_power_map(const Covering& p, const std::vector<std::string>& X,
                                            const std::vector<std::string>& Y,
                                            const std::map<std::string, std::string>& f);
// The quotient (E(p) x X^n)/S_n matches p(X) by explicit orbit enumeration;
// requires constant fiber size.
bool frames_quotient_check(const Covering& p, const std::vector<std::string>& X);
// Functoriality of the extended power: p(id) = id and p(g after f) factors.
bool functoriality_check(const Covering& p, const std::vector<std::string>& X,
                         const std::vector<std::string>& Y,
                         const std::map<std::string, std::string>& f);

// seeded random covering with base size in [1, max_base] and fiber sizes in
// [0, max_fiber]
Covering random_covering(std::mt19937_64& rng, uint32_t max_base, uint32_t max_fiber,
                         const std::string& base_prefix);

} // namespace epsq
