#pragma once

#include "fgl.hpp"

namespace epsq {

struct CarrierVar {
    std::string name;
    uint32_t order; // t^order == 0 in the carrier, order = a * n
};

struct AxiomFailure {
    std::string element;
    std::string witness;
};

struct AxiomReport {
    std::string axiom;
    int verified_degree = 0; // joint degree every listed sample was checked to
    std::vector<AxiomFailure> failures;
    bool passed() const { return failures.empty(); }
    std::string json_text() const;
};

// Model ring A(X)[t_1..t_k]/(t_i^{a n_i}) with the total operation sending
// t_i to t_i F(t_i, u) and each coefficient generator to its twist image.
// The operation extends additively and multiplicatively to all elements.
class DRing {
  public:
    // `vars` lists (name, n_i); the carrier enforces t_i^{a n_i} = 0.
    // `coeff_action` supplies the generator images; required when the
    // coefficient ring has generators (pass the law's own twist).
    static DRing make(const FormalGroupLaw& F, int grade_a,
                      const std::vector<std::pair<std::string, uint32_t>>& vars,
                      const TwistResult* coeff_action = nullptr);
    // F_2[t_1..t_k]/(t_i^{order}) with the additive law: the Q-ring model.
    static DRing additive_model(size_t k, uint32_t order, int degree);

    const FormalGroupLaw& law() const { return law_; }
    const RingPtr& ring() const { return law_.ring(); }
    int grade() const { return grade_; }
    const std::vector<CarrierVar>& carrier() const { return carrier_; }
    std::vector<Variable> carrier_vars() const;
    bool additive() const { return law_.is_additive() && ring()->gen_count() == 0; }

    MultiSeries parse_element(const std::string& text) const;
    MultiSeries reduce(const MultiSeries& s) const; // impose the carrier relations
    // Total operation; the result lives over the carrier variables plus `u`.
    MultiSeries apply_total(const MultiSeries& x, const std::string& u = "u") const;

    // default sample set: variables, coefficient generators, monomials of
    // degree <= 3, and `extra` seeded pseudo-random elements
    std::vector<MultiSeries> default_samples(uint64_t seed, size_t extra = 32) const;

    AxiomReport check_d1(const std::vector<MultiSeries>& samples) const;
    AxiomReport check_d2() const;
    AxiomReport check_d3(const std::vector<MultiSeries>& samples) const;
    // multiplicativity/additivity of the total operation on sample pairs
    AxiomReport check_hom(const std::vector<std::pair<MultiSeries, MultiSeries>>& pairs) const;

    // P_u(e) for the Euler element e = t^a: returns D_u(t)^a after asserting
    // it equals e * F_A(e, u^a) with F_A the coefficient-power companion law.
    MultiSeries euler_total(const std::string& var) const;

    // image of one generator or carrier variable under the total operation
    const MultiSeries& image_of(const std::string& name) const;

  private:
    DRing(FormalGroupLaw law, int grade) : law_(std::move(law)), grade_(grade) {}
    MultiSeries apply_images(const MultiSeries& x, const std::string& u,
                             const std::string& inner) const;

    FormalGroupLaw law_;
    int grade_ = 1;
    std::vector<CarrierVar> carrier_;
    std::map<std::string, MultiSeries> gen_images_; // over vars (u)
    std::map<std::string, MultiSeries> var_images_; // over carrier vars + (u)
    const TwistResult* twist_ = nullptr;
    std::shared_ptr<TwistResult> twist_owned_;
};

} // namespace epsq
