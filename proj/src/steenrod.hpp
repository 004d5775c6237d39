#pragma once

#include <set>

#include "dring.hpp"

namespace epsq {

struct OpLabel {
    enum class Kind { Q, Sq };
    Kind kind = Kind::Sq;
    int index = 0;
    bool operator==(const OpLabel&) const = default;
};

// A word of labeled operations, acting on the right: the last label is
// applied first.
using OpWord = std::vector<OpLabel>;
// Sq-only word, as exponents.
using SqWord = std::vector<int>;
// Formal F_2 sum of Sq words.
using WordSum = std::set<SqWord>;

OpWord parse_opword(const std::string& text); // "Sq^3 Sq^1" or "q_2 Sq^1"
std::string opword_text(const OpWord& w);
std::string sq_word_text(const SqWord& w);
std::string wordsum_text(const WordSum& s);
std::string wordsum_json(const WordSum& s); // {"words":[[3,1],...]}

// u^i coefficient of the total operation; x must be homogeneous.
MultiSeries q_op(const DRing& model, uint32_t i, const MultiSeries& x);
// Sq^j(x) = q_{n-j}(x) on homogeneous x of degree n; additive models only.
MultiSeries sq_op(const DRing& model, int j, const MultiSeries& x);

MultiSeries apply_opword(const DRing& model, const OpWord& w, const MultiSeries& x);
MultiSeries apply_sq_word(const DRing& model, const SqWord& w, const MultiSeries& x);
MultiSeries apply_wordsum(const DRing& model, const WordSum& s, const MultiSeries& x);

// Sq^k(xy) = sum_{i+j=k} Sq^i(x) Sq^j(y) for every k, per sample pair.
AxiomReport cartan_check(const DRing& model,
                         const std::vector<std::pair<MultiSeries, MultiSeries>>& pairs);

// a_1 >= 2 a_2 >= ... with every index positive
bool is_admissible(const SqWord& w);
// Rewrite into a formal sum of admissible words with the classical relation
// Sq^a Sq^b = sum_c C(b-c-1, a-2c) Sq^{a+b-c} Sq^c for a < 2b. Sq^0 acts as
// the identity and is dropped.
WordSum adem_normalize(const SqWord& w);

// Parity of the binomial coefficient C(n, k) by the carry-free bit test.
bool binomial_odd(uint64_t n, uint64_t k);

} // namespace epsq
