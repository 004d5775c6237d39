#include "covering.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace epsq {

void Covering::rebuild_fibers() {
    fibers_.assign(base_.size(), {});
    for (size_t t = 0; t < total_.size(); ++t) fibers_[proj_[t]].push_back(t);
}

Covering Covering::make(std::vector<std::string> base, std::vector<std::string> total,
                        const std::map<std::string, std::string>& projection) {
    Covering c;
    c.base_ = std::move(base);
    c.total_ = std::move(total);
    std::map<std::string, size_t> base_index;
    for (size_t b = 0; b < c.base_.size(); ++b)
        if (!base_index.emplace(c.base_[b], b).second)
            fail(ErrCode::InvalidArgument, "duplicate base label " + c.base_[b]);
    std::map<std::string, size_t> total_index;
    for (size_t t = 0; t < c.total_.size(); ++t)
        if (!total_index.emplace(c.total_[t], t).second)
            fail(ErrCode::InvalidArgument, "duplicate total label " + c.total_[t]);
    c.proj_.resize(c.total_.size());
    for (size_t t = 0; t < c.total_.size(); ++t) {
        auto it = projection.find(c.total_[t]);
        if (it == projection.end())
            fail(ErrCode::InvalidArgument, "no projection for " + c.total_[t]);
        auto bi = base_index.find(it->second);
        if (bi == base_index.end())
            fail(ErrCode::InvalidArgument, "projection target missing: " + it->second);
        c.proj_[t] = bi->second;
    }
    c.rebuild_fibers();
    return c;
}

Covering Covering::from_sizes(const std::vector<std::pair<std::string, uint32_t>>& fibers) {
    Covering c;
    for (const auto& [name, size] : fibers) {
        c.base_.push_back(name);
        for (uint32_t i = 1; i <= size; ++i) {
            c.total_.push_back(name + "." + std::to_string(i));
            c.proj_.push_back(c.base_.size() - 1);
        }
    }
    std::map<std::string, size_t> seen;
    for (size_t b = 0; b < c.base_.size(); ++b)
        if (!seen.emplace(c.base_[b], b).second)
            fail(ErrCode::InvalidArgument, "duplicate base label " + c.base_[b]);
    c.rebuild_fibers();
    return c;
}

std::vector<uint32_t> Covering::fiber_sizes() const {
    std::vector<uint32_t> out;
    for (const auto& f : fibers_) out.push_back(static_cast<uint32_t>(f.size()));
    return out;
}

std::vector<uint32_t> Covering::fiber_sizes_sorted() const {
    auto out = fiber_sizes();
    std::sort(out.begin(), out.end());
    return out;
}

Covering Covering::derivative() const {
    Covering c;
    c.base_ = total_;
    for (size_t t = 0; t < total_.size(); ++t) {
        for (size_t s : fibers_[proj_[t]]) {
            if (s == t) continue;
            c.total_.push_back("(" + total_[t] + ";" + total_[s] + ")");
            c.proj_.push_back(t);
        }
    }
    c.rebuild_fibers();
    return c;
}

Covering Covering::sum(const Covering& q) const {
    Covering c;
    for (const auto& b : base_) c.base_.push_back("L:" + b);
    for (const auto& b : q.base_) c.base_.push_back("R:" + b);
    for (size_t t = 0; t < total_.size(); ++t) {
        c.total_.push_back("L:" + total_[t]);
        c.proj_.push_back(proj_[t]);
    }
    for (size_t t = 0; t < q.total_.size(); ++t) {
        c.total_.push_back("R:" + q.total_[t]);
        c.proj_.push_back(base_.size() + q.proj_[t]);
    }
    c.rebuild_fibers();
    return c;
}

Covering Covering::product(const Covering& q) const {
    Covering c;
    for (const auto& b : base_)
        for (const auto& d : q.base_) c.base_.push_back("(" + b + "," + d + ")");
    size_t qb = q.base_.size();
    // fiber over (b, d) is fiber_b + fiber_d
    for (size_t b = 0; b < base_.size(); ++b) {
        for (size_t d = 0; d < q.base_.size(); ++d) {
            for (size_t s : fibers_[b]) {
                c.total_.push_back("(L:" + total_[s] + "," + q.base_[d] + ")");
                c.proj_.push_back(b * qb + d);
            }
            for (size_t r : q.fibers_[d]) {
                c.total_.push_back("(R:" + base_[b] + "," + q.total_[r] + ")");
                c.proj_.push_back(b * qb + d);
            }
        }
    }
    c.rebuild_fibers();
    return c;
}

namespace {

// all assignments fiber -> X, as index vectors in fiber order
std::vector<std::vector<size_t>> assignments(size_t fiber_size, size_t nx) {
    std::vector<std::vector<size_t>> out;
    if (fiber_size == 0) {
        out.push_back({});
        return out;
    }
    std::vector<size_t> cur(fiber_size, 0);
    if (nx == 0) return out; // no maps from a nonempty fiber into the empty set
    while (true) {
        out.push_back(cur);
        size_t i = 0;
        while (i < fiber_size) {
            if (++cur[i] < nx) break;
            cur[i] = 0;
            ++i;
        }
        if (i == fiber_size) break;
    }
    return out;
}

std::string assignment_label(const std::string& b, const std::vector<size_t>& a,
                             const std::vector<std::string>& X) {
    std::string s = "(" + b + "|";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += X[a[i]];
    }
    s += ")";
    return s;
}

} // namespace

Covering Covering::extended_power(const std::vector<std::string>& X) const {
    Covering c;
    c.base_ = base_;
    for (size_t b = 0; b < base_.size(); ++b) {
        for (const auto& a : assignments(fibers_[b].size(), X.size())) {
            c.total_.push_back(assignment_label(base_[b], a, X));
            c.proj_.push_back(b);
        }
    }
    c.rebuild_fibers();
    return c;
}

Covering Covering::compose(const Covering& q) const {
    // base = p(q(1)): pairs (b, w: fiber_b -> base(q));
    // total = (b, w, s, r) with s in fiber_b and r in the q-fiber over w(s)
    Covering c;
    std::vector<std::pair<size_t, std::vector<size_t>>> ws;
    for (size_t b = 0; b < base_.size(); ++b) {
        for (const auto& w : assignments(fibers_[b].size(), q.base_.size())) {
            c.base_.push_back(assignment_label(base_[b], w, q.base_));
            ws.emplace_back(b, w);
        }
    }
    for (size_t idx = 0; idx < ws.size(); ++idx) {
        const auto& [b, w] = ws[idx];
        const auto& fib = fibers_[b];
        for (size_t si = 0; si < fib.size(); ++si) {
            for (size_t r : q.fibers_[w[si]]) {
                c.total_.push_back(c.base_[idx] + ";" + total_[fib[si]] + ";" + q.total_[r]);
                c.proj_.push_back(idx);
            }
        }
    }
    c.rebuild_fibers();
    return c;
}

std::vector<long long> Covering::poly() const {
    std::vector<long long> out;
    for (const auto& f : fibers_) {
        size_t n = f.size();
        if (out.size() <= n) out.resize(n + 1, 0);
        out[n] += 1;
    }
    if (out.empty()) out.push_back(0);
    return out;
}

long long Covering::poly_eval(long long m) const { return epsq::poly_eval(poly(), m); }

std::vector<Covering::Frame> Covering::frames() const {
    size_t n = fibers_.empty() ? 0 : fibers_[0].size();
    for (const auto& f : fibers_)
        if (f.size() != n)
            fail(ErrCode::NonConstantSheets, "frames need a constant sheet count");
    std::vector<Frame> out;
    for (size_t b = 0; b < base_.size(); ++b) {
        std::vector<size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            Frame fr;
            fr.base = b;
            for (size_t i = 0; i < n; ++i) fr.images.push_back(fibers_[b][perm[i]]);
            std::string label = "(" + base_[b] + "|";
            for (size_t i = 0; i < n; ++i) {
                if (i) label += ",";
                label += total_[fr.images[i]];
            }
            label += ")";
            fr.label = std::move(label);
            out.push_back(std::move(fr));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

std::string Covering::json_text() const {
    nlohmann::json j;
    j["base"] = base_;
    nlohmann::json fib = nlohmann::json::object();
    for (size_t b = 0; b < base_.size(); ++b) fib[base_[b]] = fibers_[b].size();
    j["fibers"] = fib;
    return j.dump();
}

Covering Covering::parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrCode::Parse, std::string("bad covering json: ") + e.what());
    }
    if (!j.contains("base") || !j["base"].is_array())
        fail(ErrCode::Parse, "covering json needs a \"base\" array");
    if (!j.contains("fibers") || !j["fibers"].is_object())
        fail(ErrCode::Parse, "covering json needs a \"fibers\" object");
    std::vector<std::pair<std::string, uint32_t>> sizes;
    for (const auto& b : j["base"]) {
        if (!b.is_string()) fail(ErrCode::Parse, "base labels must be strings");
        std::string name = b.get<std::string>();
        if (!j["fibers"].contains(name))
            fail(ErrCode::Parse, "no fiber size for base point " + name);
        const auto& v = j["fibers"][name];
        if (!v.is_number_unsigned()) fail(ErrCode::Parse, "fiber sizes must be non-negative");
        sizes.emplace_back(name, v.get<uint32_t>());
    }
    return from_sizes(sizes);
}

std::vector<long long> poly_add(const std::vector<long long>& a, const std::vector<long long>& b) {
    std::vector<long long> out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
    std::vector<long long> out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<long long> poly_compose(const std::vector<long long>& outer,
                                    const std::vector<long long>& inner) {
    std::vector<long long> out{0};
    std::vector<long long> power{1};
    for (size_t i = 0; i < outer.size(); ++i) {
        if (outer[i] != 0) {
            std::vector<long long> scaled = power;
            for (auto& v : scaled) v *= outer[i];
            out = poly_add(out, scaled);
        }
        if (i + 1 < outer.size()) power = poly_mul(power, inner);
    }
    return out;
}

std::vector<long long> poly_derivative(const std::vector<long long>& a) {
    std::vector<long long> out;
    for (size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * static_cast<long long>(i));
    if (out.empty()) out.push_back(0);
    return out;
}

long long poly_eval(const std::vector<long long>& a, long long m) {
    long long out = 0, p = 1;
    for (size_t i = 0; i < a.size(); ++i) {
        out += a[i] * p;
        p *= m;
    }
    return out;
}

bool compose_bijection_check(const Covering& p, const Covering& q,
                             const std::vector<std::string>& X) {
    Covering pq = p.compose(q);
    Covering lhs = pq.extended_power(X);         // (p o q)(X)
    Covering qx = q.extended_power(X);           // q(X)
    Covering rhs = p.extended_power(qx.total()); // p(q(X))

    if (lhs.total().size() != rhs.total().size()) return false;

    // Walk every element ((b,w), phi) of (p o q)(X), map it to the element
    // (b, s -> (w(s), r -> phi(s,r))) of p(q(X)), and require the images to
    // exhaust the right-hand side with no collisions.
    std::vector<std::string> mapped;
    for (size_t b = 0; b < p.base().size(); ++b) {
        const auto& fib = p.fiber(b);
        for (const auto& w : assignments(fib.size(), q.base().size())) {
            // the fiber of p o q over (b, w) is the disjoint union of the
            // q-fibers over w(s); enumerate phi: that fiber -> X
            std::vector<std::pair<size_t, size_t>> slots; // (position in fib, r)
            for (size_t si = 0; si < fib.size(); ++si)
                for (size_t r : q.fiber(w[si])) slots.emplace_back(si, r);
            for (const auto& phi : assignments(slots.size(), X.size())) {
                // u(s) = (w(s), r -> phi(s,r)) as a q(X) element label
                std::string label = "(" + p.base()[b] + "|";
                for (size_t si = 0; si < fib.size(); ++si) {
                    if (si) label += ",";
                    std::string inner = "(" + q.base()[w[si]] + "|";
                    bool first = true;
                    const auto& qfib = q.fiber(w[si]);
                    for (size_t ri = 0; ri < qfib.size(); ++ri) {
                        size_t slot = 0;
                        for (size_t k = 0; k < slots.size(); ++k)
                            if (slots[k].first == si && slots[k].second == qfib[ri]) slot = k;
                        if (!first) inner += ",";
                        first = false;
                        inner += X[phi[slot]];
                    }
                    inner += ")";
                    label += inner;
                }
                label += ")";
                mapped.push_back(std::move(label));
            }
        }
    }
    std::sort(mapped.begin(), mapped.end());
    if (std::adjacent_find(mapped.begin(), mapped.end()) != mapped.end()) return false;
    std::vector<std::string> rhs_labels = rhs.total();
    std::sort(rhs_labels.begin(), rhs_labels.end());
    return mapped == rhs_labels;
}

bool frames_quotient_check(const Covering& p, const std::vector<std::string>& X) {
    auto frames = p.frames();
    size_t n = p.total().empty() ? 0 : p.fiber(0).size();

    // orbits of (frame, x-tuple) under the symmetric group
    std::vector<size_t> perm(n);
    std::set<std::string> orbit_reps;
    std::vector<std::vector<size_t>> tuples;
    {
        if (n == 0) {
            tuples = {{}};
        } else if (X.empty()) {
            tuples = {};
        } else {
            std::vector<size_t> cur(n, 0);
            while (true) {
                tuples.push_back(cur);
                size_t i = 0;
                while (i < n) {
                    if (++cur[i] < X.size()) break;
                    cur[i] = 0;
                    ++i;
                }
                if (i == n) break;
            }
        }
    }
    auto render = [&](const Covering::Frame& fr, const std::vector<size_t>& xs) {
        std::string s = fr.label + "*(";
        for (size_t i = 0; i < xs.size(); ++i) {
            if (i) s += ",";
            s += X[xs[i]];
        }
        return s + ")";
    };
    std::map<std::string, std::string> orbit_to_power; // orbit rep -> p(X) label
    for (const auto& fr : frames) {
        for (const auto& xs : tuples) {
            // canonical orbit representative: minimum over all permutations
            std::iota(perm.begin(), perm.end(), 0);
            std::string best;
            do {
                Covering::Frame pf;
                pf.base = fr.base;
                std::vector<size_t> pxs(n);
                pf.images.resize(n);
                for (size_t i = 0; i < n; ++i) {
                    pf.images[i] = fr.images[perm[i]];
                    pxs[i] = xs[perm[i]];
                }
                std::string label = "(" + p.base()[fr.base] + "|";
                for (size_t i = 0; i < n; ++i) {
                    if (i) label += ",";
                    label += p.total()[pf.images[i]];
                }
                label += ")";
                pf.label = label;
                std::string r = render(pf, pxs);
                if (best.empty() || r < best) best = r;
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (orbit_reps.count(best)) continue;
            orbit_reps.insert(best);
            // the orbit determines u: fiber -> X by u(f(i)) = x_i
            std::vector<std::pair<size_t, size_t>> pairs; // (total idx, x idx)
            for (size_t i = 0; i < n; ++i) pairs.emplace_back(fr.images[i], xs[i]);
            std::sort(pairs.begin(), pairs.end());
            std::string label = "(" + p.base()[fr.base] + "|";
            for (size_t i = 0; i < n; ++i) {
                if (i) label += ",";
                label += X[pairs[i].second];
            }
            label += ")";
            auto [it, fresh] = orbit_to_power.emplace(best, label);
            if (!fresh) return false;
        }
    }
    // the orbit map must be a bijection onto p(X)
    std::set<std::string> images;
    for (const auto& [rep, label] : orbit_to_power)
        if (!images.insert(label).second) return false;
    Covering px = p.extended_power(X);
    std::set<std::string> expect(px.total().begin(), px.total().end());
    return images == expect;
}

std::vector<std::string> extended_power_map(const Covering& p, const std::vector<std::string>& X,
                                            const std::vector<std::string>& Y,
                                            const std::map<std::string, std::string>& f) {
    // the induced map p(f): p(X) -> p(Y) by postcomposition, listed in the
    // enumeration order of extended_power(X)
    std::vector<size_t> where(X.size());
    for (size_t i = 0; i < X.size(); ++i) {
        auto it = f.find(X[i]);
        if (it == f.end()) fail(ErrCode::InvalidArgument, "map misses element " + X[i]);
        auto pos = std::find(Y.begin(), Y.end(), it->second);
        if (pos == Y.end()) fail(ErrCode::InvalidArgument, "image outside target: " + it->second);
        where[i] = static_cast<size_t>(pos - Y.begin());
    }
    std::vector<std::string> out;
    for (size_t b = 0; b < p.base().size(); ++b) {
        for (const auto& a : assignments(p.fiber(b).size(), X.size())) {
            std::vector<size_t> mapped(a.size());
            for (size_t i = 0; i < a.size(); ++i) mapped[i] = where[a[i]];
            out.push_back(assignment_label(p.base()[b], mapped, Y));
        }
    }
    return out;
}

bool functoriality_check(const Covering& p, const std::vector<std::string>& X,
                         const std::vector<std::string>& Y,
                         const std::map<std::string, std::string>& f) {
    // p(id) = id
    std::map<std::string, std::string> id;
    for (const auto& x : X) id[x] = x;
    if (extended_power_map(p, X, X, id) != p.extended_power(X).total()) return false;

    // images of p(f) are elements of p(Y)
    Covering py = p.extended_power(Y);
    std::set<std::string> target(py.total().begin(), py.total().end());
    for (const auto& label : extended_power_map(p, X, Y, f))
        if (!target.count(label)) return false;
    return true;
}

Covering random_covering(std::mt19937_64& rng, uint32_t max_base, uint32_t max_fiber,
                         const std::string& base_prefix) {
    uint32_t nb = 1 + static_cast<uint32_t>(rng() % max_base);
    std::vector<std::pair<std::string, uint32_t>> sizes;
    for (uint32_t b = 0; b < nb; ++b)
        sizes.emplace_back(base_prefix + std::to_string(b + 1),
                           static_cast<uint32_t>(rng() % (max_fiber + 1)));
    return Covering::from_sizes(sizes);
}

} // namespace epsq
