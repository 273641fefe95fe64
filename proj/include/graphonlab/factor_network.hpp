#ifndef GRAPHONLAB_FACTOR_NETWORK_HPP
#define GRAPHONLAB_FACTOR_NETWORK_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace graphonlab {

enum class Method { automatic, elimination, enumeration };

// Sum over all assignments of a product of tables. Variables have finite
// domains and a weight per value; weights multiply in when a variable is
// summed out. Kept variables are never summed: the result is a tensor over
// them (row-major in the order given, last index fastest) and their weights
// are not applied.
template <class Real = double>
class FactorNetwork {
public:
    struct Factor {
        std::vector<int> scope;
        std::vector<Real> table;  // row-major over scope, last fastest
    };

    explicit FactorNetwork(std::vector<std::vector<double>> weights) : weights_(std::move(weights)) {
        for (const auto& w : weights_)
            if (w.empty()) throw ParameterError("factor network variable with empty domain");
    }

    int variable_count() const noexcept { return static_cast<int>(weights_.size()); }
    int domain_size(int v) const { return static_cast<int>(weights_.at(static_cast<std::size_t>(v)).size()); }

    void add_factor(std::vector<int> scope, std::vector<Real> table) {
        std::size_t expect = 1;
        for (std::size_t i = 0; i < scope.size(); ++i) {
            if (scope[i] < 0 || scope[i] >= variable_count()) throw ParameterError("factor scope names unknown variable");
            for (std::size_t j = 0; j < i; ++j)
                if (scope[j] == scope[i]) throw ParameterError("factor scope repeats a variable");
            expect *= static_cast<std::size_t>(domain_size(scope[i]));
        }
        if (table.size() != expect) throw ParameterError("factor table size does not match its scope");
        factors_.push_back({std::move(scope), std::move(table)});
    }

    // Estimated elementary operations for each method.
    double elimination_cost(const std::vector<int>& kept) const { return plan(kept).cost; }

    double enumeration_cost(const std::vector<int>& kept) const {
        double c = 1;
        for (int v = 0; v < variable_count(); ++v) c *= domain_size(v);
        (void)kept;
        return c * static_cast<double>(factors_.size() + weights_.size() + 1);
    }

    std::vector<Real> contract(const std::vector<int>& kept, Method method, double budget) const {
        check_kept(kept);
        const Plan p = plan(kept);
        const double enum_cost = enumeration_cost(kept);
        if (method == Method::automatic) method = enum_cost <= p.cost ? Method::enumeration : Method::elimination;
        const double cost = method == Method::enumeration ? enum_cost : p.cost;
        if (cost > budget) {
            std::ostringstream msg;
            msg << "estimated " << cost << " operations exceeds budget " << budget
                << (method == Method::enumeration ? " (try elimination or a smaller instance)"
                                                   : " (use fewer blocks or a graph of smaller width)");
            throw BudgetError(msg.str());
        }
        return method == Method::enumeration ? enumerate(kept) : eliminate(kept, p.order);
    }

    Real contract_scalar(Method method, double budget) const { return contract({}, method, budget).front(); }

private:
    struct Plan {
        std::vector<int> order;
        double cost = 0;
    };

    void check_kept(const std::vector<int>& kept) const {
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (kept[i] < 0 || kept[i] >= variable_count()) throw ParameterError("kept variable out of range");
            for (std::size_t j = 0; j < i; ++j)
                if (kept[j] == kept[i]) throw ParameterError("kept variable listed twice");
        }
    }

    // Greedy minimum-fill order over the interaction graph, ties broken by
    // the size of the created table, then by variable id.
    Plan plan(const std::vector<int>& kept) const {
        const int n = variable_count();
        std::vector<std::set<int>> nb(static_cast<std::size_t>(n));
        std::vector<int> touching(static_cast<std::size_t>(n), 0);
        for (const auto& f : factors_)
            for (int a : f.scope) {
                ++touching[a];
                for (int b : f.scope)
                    if (a != b) nb[a].insert(b);
            }
        std::vector<bool> done(static_cast<std::size_t>(n), false);
        for (int k : kept) done[k] = true;
        Plan p;
        double factor_count = static_cast<double>(factors_.size());
        for (int step = 0; step < n - static_cast<int>(kept.size()); ++step) {
            int best = -1;
            long best_fill = 0;
            double best_size = 0;
            for (int x = 0; x < n; ++x) {
                if (done[x]) continue;
                long fill = 0;
                for (auto i = nb[x].begin(); i != nb[x].end(); ++i)
                    for (auto j = std::next(i); j != nb[x].end(); ++j)
                        if (!nb[*i].count(*j)) ++fill;
                double size = domain_size(x);
                for (int y : nb[x]) size *= domain_size(y);
                if (best < 0 || fill < best_fill || (fill == best_fill && size < best_size)) {
                    best = x;
                    best_fill = fill;
                    best_size = size;
                }
            }
            p.order.push_back(best);
            p.cost += best_size * (touching[best] + 1);
            for (int a : nb[best])
                for (int b : nb[best])
                    if (a != b) nb[a].insert(b);
            // The touching factors collapse into one new factor on nb[best].
            for (int a : nb[best]) {
                nb[a].erase(best);
                touching[a] += 1;
            }
            factor_count += 1;
            nb[best].clear();
            done[best] = true;
        }
        double final_size = 1;
        for (int k : kept) final_size *= domain_size(k);
        p.cost += final_size * (factor_count + 1);
        return p;
    }

    std::vector<Real> eliminate(const std::vector<int>& kept, const std::vector<int>& order) const {
        std::vector<Factor> pool = factors_;
        std::vector<bool> live(pool.size(), true);
        for (int x : order) {
            std::vector<std::size_t> hit;
            std::vector<int> scope;
            for (std::size_t i = 0; i < pool.size(); ++i) {
                if (!live[i]) continue;
                const auto& s = pool[i].scope;
                if (std::find(s.begin(), s.end(), x) == s.end()) continue;
                hit.push_back(i);
                for (int v : s)
                    if (v != x) scope.push_back(v);
            }
            std::sort(scope.begin(), scope.end());
            scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
            pool.push_back(sum_out(x, scope, pool, hit));
            live.push_back(true);
            for (auto i : hit) live[i] = false;
        }
        std::vector<const Factor*> rest;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (live[i]) rest.push_back(&pool[i]);
        return product_over(kept, rest);
    }

    // Strides of a factor's variables, zero for variables outside its scope.
    std::vector<std::size_t> strides_for(const Factor& f, const std::vector<int>& vars) const {
        std::vector<std::size_t> st(vars.size(), 0);
        std::size_t s = 1;
        for (auto i = f.scope.size(); i-- > 0;) {
            auto it = std::find(vars.begin(), vars.end(), f.scope[i]);
            if (it != vars.end()) st[static_cast<std::size_t>(it - vars.begin())] = s;
            s *= static_cast<std::size_t>(domain_size(f.scope[i]));
        }
        return st;
    }

    Factor sum_out(int x, const std::vector<int>& scope, const std::vector<Factor>& pool,
                   const std::vector<std::size_t>& hit) const {
        std::vector<int> vars = scope;
        vars.push_back(x);
        const std::size_t nf = hit.size();
        const std::size_t ns = scope.size();
        std::vector<std::vector<std::size_t>> st(nf);
        for (std::size_t f = 0; f < nf; ++f) st[f] = strides_for(pool[hit[f]], vars);
        std::vector<int> dims(ns);
        std::size_t out_size = 1;
        for (std::size_t i = 0; i < ns; ++i) out_size *= static_cast<std::size_t>(dims[i] = domain_size(scope[i]));
        const auto& w = weights_[x];
        const int dx = domain_size(x);
        Factor out{scope, std::vector<Real>(out_size)};
        std::vector<int> idx(ns, 0);
        std::vector<std::size_t> off(nf, 0);
        std::vector<const Real*> tab(nf);
        std::vector<std::size_t> xs(nf);
        for (std::size_t f = 0; f < nf; ++f) {
            tab[f] = pool[hit[f]].table.data();
            xs[f] = st[f][ns];
        }
        for (std::size_t o = 0; o < out_size; ++o) {
            CompensatedSum<Real> acc;
            for (int i = 0; i < dx; ++i) {
                Real prod = static_cast<Real>(w[i]);
                for (std::size_t f = 0; f < nf; ++f) prod *= tab[f][off[f] + static_cast<std::size_t>(i) * xs[f]];
                acc += prod;
            }
            out.table[o] = acc.value();
            for (auto j = ns; j-- > 0;) {
                if (++idx[j] < dims[j]) {
                    for (std::size_t f = 0; f < nf; ++f) off[f] += st[f][j];
                    break;
                }
                for (std::size_t f = 0; f < nf; ++f) off[f] -= st[f][j] * static_cast<std::size_t>(dims[j] - 1);
                idx[j] = 0;
            }
        }
        return out;
    }

    // Pointwise product of factors living on kept variables only.
    std::vector<Real> product_over(const std::vector<int>& kept, const std::vector<const Factor*>& fs) const {
        const std::size_t nk = kept.size();
        std::vector<int> dims(nk);
        std::size_t size = 1;
        for (std::size_t i = 0; i < nk; ++i) size *= static_cast<std::size_t>(dims[i] = domain_size(kept[i]));
        std::vector<std::vector<std::size_t>> st;
        for (const auto* f : fs) st.push_back(strides_for(*f, kept));
        std::vector<Real> out(size);
        std::vector<int> idx(nk, 0);
        std::vector<std::size_t> off(fs.size(), 0);
        for (std::size_t o = 0; o < size; ++o) {
            Real prod = 1;
            for (std::size_t f = 0; f < fs.size(); ++f) prod *= fs[f]->table[off[f]];
            out[o] = prod;
            for (auto j = nk; j-- > 0;) {
                if (++idx[j] < dims[j]) {
                    for (std::size_t f = 0; f < fs.size(); ++f) off[f] += st[f][j];
                    break;
                }
                for (std::size_t f = 0; f < fs.size(); ++f) off[f] -= st[f][j] * static_cast<std::size_t>(dims[j] - 1);
                idx[j] = 0;
            }
        }
        return out;
    }

    // Brute force: every assignment, one compensated sum per kept cell.
    std::vector<Real> enumerate(const std::vector<int>& kept) const {
        const int n = variable_count();
        std::vector<int> free_vars;
        for (int v = 0; v < n; ++v)
            if (std::find(kept.begin(), kept.end(), v) == kept.end()) free_vars.push_back(v);
        std::vector<int> vars = kept;
        vars.insert(vars.end(), free_vars.begin(), free_vars.end());
        std::vector<std::vector<std::size_t>> st;
        for (const auto& f : factors_) st.push_back(strides_for(f, vars));
        std::size_t kept_size = 1;
        for (int k : kept) kept_size *= static_cast<std::size_t>(domain_size(k));
        std::size_t free_size = 1;
        for (int v : free_vars) free_size *= static_cast<std::size_t>(domain_size(v));
        std::vector<Real> out(kept_size);
        std::vector<int> idx(vars.size(), 0);
        for (std::size_t o = 0; o < kept_size; ++o) {
            CompensatedSum<Real> acc;
            for (std::size_t r = 0; r < free_size; ++r) {
                Real prod = 1;
                for (std::size_t j = kept.size(); j < vars.size(); ++j) prod *= static_cast<Real>(weights_[vars[j]][idx[j]]);
                for (std::size_t f = 0; f < factors_.size(); ++f) {
                    std::size_t off = 0;
                    for (std::size_t j = 0; j < vars.size(); ++j) off += st[f][j] * static_cast<std::size_t>(idx[j]);
                    prod *= factors_[f].table[off];
                }
                acc += prod;
                advance(idx, vars, kept.size());
            }
            out[o] = acc.value();
            advance(idx, vars, 0, kept.size());
        }
        return out;
    }

    // Odometer over vars[from..to), last fastest.
    void advance(std::vector<int>& idx, const std::vector<int>& vars, std::size_t from,
                 std::size_t to = std::numeric_limits<std::size_t>::max()) const {
        to = std::min(to, vars.size());
        for (auto j = to; j-- > from;) {
            if (++idx[j] < domain_size(vars[j])) return;
            idx[j] = 0;
        }
    }

    std::vector<std::vector<double>> weights_;
    std::vector<Factor> factors_;
};

} // namespace graphonlab

#endif
