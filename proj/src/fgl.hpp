#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "series.hpp"

namespace epsq {

struct IdentityCheck {
    bool passed = false;
    int degree = 0;        // degree up to which the identity was checked
    std::string witness;   // first offending monomial when failed
};

struct FglValidation {
    IdentityCheck unit, commutative, associative, order_two;
    bool law_ok() const { return unit.passed && commutative.passed && associative.passed; }
    bool all_passed() const { return law_ok() && order_two.passed; }
    // Name of the first failing identity in check order, or "".
    std::string first_failure() const;
    const IdentityCheck& check(const std::string& name) const;
};

// A validated bivariate series F(x,y). Extra variables beyond the two law
// variables are treated as coefficient parameters and ride through all
// substitutions untouched.
class FormalGroupLaw {
  public:
    // Runs the four identity checks to `degree`.
    static FglValidation validate(const MultiSeries& f, int degree,
                                  const std::string& x = "x", const std::string& y = "y");
    // Validating constructor; throws ValidationFailed when unit, commutativity
    // or associativity fails. A failed order-two check is recorded, not fatal.
    static FormalGroupLaw make(const MultiSeries& f, int degree, const std::string& x = "x",
                               const std::string& y = "y");
    static FormalGroupLaw additive(const RingPtr& ring, int degree, int grade = 1);

    const MultiSeries& series() const { return series_; }
    const RingPtr& ring() const { return series_.ring(); }
    const std::string& var_x() const { return x_; }
    const std::string& var_y() const { return y_; }
    int degree() const { return degree_; }
    bool order_two() const { return checks_.order_two.passed; }
    const FglValidation& checks() const { return checks_; }
    bool is_additive() const;
    // Coefficient of x^i y^j as a series in the parameter variables.
    MultiSeries coefficient(uint32_t i, uint32_t j) const;

    std::string json_text() const; // series schema plus a "flags" object

  private:
    FormalGroupLaw(MultiSeries f, int degree, std::string x, std::string y, FglValidation checks)
        : series_(std::move(f)), degree_(degree), x_(std::move(x)), y_(std::move(y)),
          checks_(std::move(checks)) {}
    MultiSeries series_;
    int degree_;
    std::string x_, y_;
    FglValidation checks_;
};

struct MorphismReport {
    bool ok = false;
    int degree = 0;
    std::string witness;
};

// Does h carry F to G, i.e. h(F(x,y)) == G(h(x), h(y)) up to the common
// truncation? h substitutes its variable `hvar`; other variables of h are
// parameters. `degree` caps the check; it defaults to the laws' validated
// degrees and is always limited by the series truncations.
MorphismReport is_morphism(const MultiSeries& h, const std::string& hvar,
                           const FormalGroupLaw& F, const FormalGroupLaw& G,
                           std::optional<int> degree = {});

// Result of the twist solver. The law's series lives in variables (x, y, t);
// coefficients c_{ijk} x^i y^j t^k are determined exactly when
// 2(i+j) + k <= solved_degree, which covers every stored slot whenever the
// input was exact.
struct TwistResult {
    FormalGroupLaw law;
    int solved_degree = 0;    // morphism identity verified to this joint degree
    int validated_degree = 0; // law identities re-checked to this degree
    // Determined coefficients, keyed by (i, j, k).
    std::map<std::tuple<uint32_t, uint32_t, uint32_t>, RingElem> table;

    bool determined(uint32_t i, uint32_t j, uint32_t k) const {
        return 2l * (i + j) + k <= static_cast<long>(solved_degree);
    }
    // Series sum_k c_{ijk} var^k with its determined depth in the second slot.
    std::pair<MultiSeries, int> coefficient_series(uint32_t i, uint32_t j,
                                                   const std::string& var) const;
};

// The unique law F_t over the base ring extended by a degree-1 variable t for
// which h_t(x) = x F(x,t) is a morphism F -> F_t. Requires the order-two
// flag. `degree` defaults to the law's degree; exact inputs are solved deep
// enough that every stored slot of the result is determined. `order_seed`
// permutes the processing order inside each solver level (0 = canonical).
TwistResult lubin_twist(const FormalGroupLaw& F, std::optional<int> degree = {},
                        uint64_t order_seed = 0);

// G with coefficients raised to the a-th power, evaluated at (x^a, y^a).
FormalGroupLaw square_compose(const FormalGroupLaw& G, uint32_t a);
// The law H with H(x,y)^a = F(x^a, y^a); a must be a power of two. Error
// NotCompatible when some coefficient is not an a-th power.
FormalGroupLaw frobenius_descend(const FormalGroupLaw& F, uint32_t a);

struct FreshGenerator {
    std::string name;
    int degree = 0;
    uint32_t i = 0, j = 0; // coefficient slot the generator was born in
};

struct UniversalResult {
    FormalGroupLaw law;
    RingPtr ring;
    std::vector<FreshGenerator> fresh; // in creation order
};

// Universal order-two law to total degree `max_degree`: degree by degree the
// unit/commutativity/order-two/associativity constraints are solved as
// F_2-linear conditions and the free parameters become fresh ring generators
// g<d>_<k> of degree grade*(1-d).
UniversalResult universal_order_two(int max_degree, int grade = 1);

} // namespace epsq
