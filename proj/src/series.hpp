#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace epsq {

// Exponent vector over the generators of a ring (length == generator count).
using GenExp = std::vector<uint32_t>;
// Exponent vector over the variables of a series (length == variable count).
using VarExp = std::vector<uint32_t>;

struct Generator {
    std::string name;
    int degree = 0;
};

struct Variable {
    std::string name;
    int degree = 1; // weighted-degree contribution per exponent; must be >= 1
};

class CoeffRing;
using RingPtr = std::shared_ptr<const CoeffRing>;

// Graded commutative ring of characteristic 2, presented by generators with
// integer degrees and a truncation bound: monomials with |weighted degree| >
// truncation are identified with zero.
class CoeffRing {
  public:
    static RingPtr make(std::vector<Generator> gens, int truncation);
    // The field with two elements (no generators).
    static RingPtr f2(int truncation = 0);
    // Same generators plus `extra`, same truncation unless overridden.
    RingPtr extend(const std::vector<Generator>& extra, std::optional<int> truncation = {}) const;

    size_t gen_count() const { return gens_.size(); }
    const Generator& gen(size_t i) const { return gens_[i]; }
    const std::vector<Generator>& gens() const { return gens_; }
    std::optional<size_t> find(const std::string& name) const;
    int truncation() const { return trunc_; }

    long degree_of(const GenExp& e) const;
    bool within_truncation(const GenExp& e) const;
    bool same(const CoeffRing& other) const;

  private:
    CoeffRing(std::vector<Generator> gens, int truncation);
    std::vector<Generator> gens_;
    std::map<std::string, size_t> index_;
    int trunc_ = 0;
};

// Element of a CoeffRing: a finite set of monomials (an F_2 coefficient is
// presence/absence). Terms are kept sorted and truncation-filtered, so
// equality is plain comparison.
class RingElem {
  public:
    RingElem() = default;
    explicit RingElem(RingPtr ring) : ring_(std::move(ring)) {}
    static RingElem zero(RingPtr ring) { return RingElem(std::move(ring)); }
    static RingElem one(RingPtr ring);
    static RingElem generator(const RingPtr& ring, const std::string& name);
    static RingElem monomial(RingPtr ring, GenExp e);

    const RingPtr& ring() const { return ring_; }
    const std::vector<GenExp>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;

    RingElem operator+(const RingElem& o) const;
    RingElem operator*(const RingElem& o) const;
    RingElem pow(uint32_t k) const;
    // Square root of the Frobenius: halves all exponents. Error NotASquare if
    // any exponent is odd.
    RingElem frobenius_sqrt() const;
    RingElem square() const;

    // Homogeneous degree; nullopt for zero or inhomogeneous elements.
    std::optional<long> degree() const;
    bool is_homogeneous() const;

    // Ring homomorphism determined on generators. Generators absent from the
    // map go to the same-named generator of `target`.
    RingElem substitute_gens(const RingPtr& target,
                             const std::map<std::string, RingElem>& images) const;
    // Embedding into a ring that contains all our generators by name.
    RingElem migrate(const RingPtr& target) const;

    bool operator==(const RingElem& o) const { return terms_ == o.terms_; }
    bool operator!=(const RingElem& o) const { return !(*this == o); }
    bool operator<(const RingElem& o) const { return terms_ < o.terms_; }

    std::string to_text() const;

  private:
    void insert_mod2(GenExp e);
    void normalize();
    RingPtr ring_;
    std::vector<GenExp> terms_; // sorted, unique
};

// Sentinel truncation for series that are exact polynomials (no unknown
// higher-order part).
inline constexpr int kExactTrunc = 1 << 28;

// Sparse truncated multivariate series over a CoeffRing. A term maps a
// variable-exponent vector to a nonzero RingElem; terms with weighted
// variable degree above the truncation are dropped. The truncation is the
// knowledge bound: every monomial of weighted degree <= truncation is stored
// exactly.
class MultiSeries {
  public:
    MultiSeries() = default;
    MultiSeries(RingPtr ring, std::vector<Variable> vars, int truncation);

    static MultiSeries zero(RingPtr ring, std::vector<Variable> vars, int truncation = kExactTrunc);
    static MultiSeries constant(const RingElem& c, std::vector<Variable> vars,
                                int truncation = kExactTrunc);
    static MultiSeries variable(const RingPtr& ring, const std::vector<Variable>& vars,
                                const std::string& name, int truncation = kExactTrunc);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Variable>& vars() const { return vars_; }
    int truncation() const { return trunc_; }
    bool exact() const { return trunc_ >= kExactTrunc; }
    const std::map<VarExp, RingElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    long weighted_degree(const VarExp& e) const;
    // Smallest weighted degree of a stored term; kExactTrunc when zero.
    long min_degree() const;

    MultiSeries operator+(const MultiSeries& o) const;
    MultiSeries operator*(const MultiSeries& o) const;
    // Product truncated to min(bound, soundness limit of the operands).
    MultiSeries mul_to(const MultiSeries& o, long bound) const;
    MultiSeries pow(uint32_t k) const;
    MultiSeries pow_to(uint32_t k, long bound) const;
    // Scale by a ring element.
    MultiSeries scale(const RingElem& c) const;

    // Composite f(images). Every assigned series must have zero constant
    // term; unassigned variables map to themselves. Result variables are the
    // union of the image variables.
    MultiSeries substitute(const std::map<std::string, MultiSeries>& images) const;
    MultiSeries substitute_to(const std::map<std::string, MultiSeries>& images, long bound) const;

    RingElem coefficient(const VarExp& exps) const;
    // Coefficient of var^k as a series in the remaining variables.
    MultiSeries coefficient_of(const std::string& var, uint32_t k) const;
    // Largest exponent of `var` appearing in any term.
    uint32_t max_exponent(const std::string& var) const;

    MultiSeries frobenius_sqrt() const;
    MultiSeries square() const;

    MultiSeries truncate_to(int bound) const;
    // Impose var^cap == 0.
    MultiSeries cap_variable(const std::string& var, uint32_t cap) const;
    MultiSeries rename_variable(const std::string& from, const Variable& to) const;
    // Reorder/extend to the given variable list (must contain all used vars).
    MultiSeries with_variables(const std::vector<Variable>& vars) const;
    // Apply a ring homomorphism to every coefficient.
    MultiSeries map_coefficients(const RingPtr& target,
                                 const std::map<std::string, RingElem>& gen_images) const;

    // Homogeneous total degree (variables' weighted degree plus coefficient
    // degree); nullopt for zero or inhomogeneous.
    std::optional<long> homogeneous_degree() const;

    std::optional<VarExp> first_difference(const MultiSeries& o) const;
    bool equal_values(const MultiSeries& o) const;

    std::string to_text() const;
    std::string term_text(const VarExp& e) const;
    std::string json_text() const; // canonical schema: {"vars":[...],"terms":[...]}

    void insert_term(const VarExp& e, const RingElem& c); // adds mod 2, filters truncation

  private:
    size_t var_index(const std::string& name) const;
    RingPtr ring_;
    std::vector<Variable> vars_;
    int trunc_ = kExactTrunc;
    std::map<VarExp, RingElem> terms_;
};

// Parse the series text grammar: identifiers are variables (when listed) or
// ring generators; operators +, * and ^ with non-negative integer exponents;
// whitespace ignored. The result is exact.
MultiSeries parse_series(const RingPtr& ring, const std::vector<Variable>& vars,
                         const std::string& text);
// All identifiers appearing in a series text, in order of first appearance.
std::vector<std::string> scan_identifiers(const std::string& text);

long saturating_add(long a, long b);

} // namespace epsq
