#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "mcsf/errors.hpp"

namespace mcsf {

enum class Relation { le, eq, ge };

struct Term {
    int var = 0;
    long coef = 0;
};

// A maximization program over bounded integer variables.
struct BipModel {
    struct Variable {
        std::string name;
        long lo = 0;
        long hi = 0;
    };
    struct Constraint {
        std::vector<Term> terms;
        Relation rel = Relation::le;
        long rhs = 0;
        std::string name;
    };

    std::vector<Variable> variables;
    std::vector<Constraint> constraints;
    std::vector<Term> objective;
    long objective_constant = 0;

    int add_variable(std::string name, long lo, long hi) {
        if (lo > hi) throw PreconditionError("variable " + name + " has empty domain");
        if (index_.count(name)) throw PreconditionError("duplicate variable " + name);
        index_[name] = static_cast<int>(variables.size());
        variables.push_back({std::move(name), lo, hi});
        return static_cast<int>(variables.size()) - 1;
    }

    void add_constraint(std::vector<Term> terms, Relation rel, long rhs, std::string name = {}) {
        for (const auto& t : terms) check_var(t.var);
        constraints.push_back({std::move(terms), rel, rhs, std::move(name)});
    }

    void add_objective(int var, long coef) {
        check_var(var);
        objective.push_back({var, coef});
    }

    int find(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : it->second;
    }

    int var_count() const { return static_cast<int>(variables.size()); }

    // Debug listing, one line per variable and constraint.
    std::string dump() const {
        std::ostringstream out;
        auto write_terms = [&](const std::vector<Term>& terms) {
            if (terms.empty()) out << "0";
            for (std::size_t i = 0; i < terms.size(); ++i) {
                if (i) out << " + ";
                out << terms[i].coef << "*" << variables[terms[i].var].name;
            }
        };
        out << "max ";
        write_terms(objective);
        out << " + " << objective_constant << "\n";
        for (const auto& v : variables) out << "var " << v.name << " in [" << v.lo << "," << v.hi << "]\n";
        for (const auto& c : constraints) {
            out << "con " << (c.name.empty() ? "_" : c.name) << ": ";
            write_terms(c.terms);
            out << (c.rel == Relation::le ? " <= " : c.rel == Relation::eq ? " = " : " >= ") << c.rhs << "\n";
        }
        return out.str();
    }

private:
    void check_var(int var) const {
        if (var < 0 || var >= static_cast<int>(variables.size()))
            throw PreconditionError("term references undeclared variable " + std::to_string(var));
    }

    std::unordered_map<std::string, int> index_;
};

enum class BipStatus { optimal, infeasible };

struct BipSolution {
    BipStatus status = BipStatus::infeasible;
    std::vector<long> assignment;
    long objective_value = 0;
    long nodes = 0;

    bool optimal() const { return status == BipStatus::optimal; }
};

struct BipOptions {
    long node_budget = 20'000'000;
};

// Evaluates constraints and bounds exactly; used to double-check solutions.
inline bool satisfies(const BipModel& m, const std::vector<long>& x) {
    if (static_cast<int>(x.size()) != m.var_count()) return false;
    for (int i = 0; i < m.var_count(); ++i)
        if (x[i] < m.variables[i].lo || x[i] > m.variables[i].hi) return false;
    for (const auto& c : m.constraints) {
        long act = 0;
        for (const auto& t : c.terms) act += t.coef * x[t.var];
        if ((c.rel == Relation::le && act > c.rhs) || (c.rel == Relation::ge && act < c.rhs) ||
            (c.rel == Relation::eq && act != c.rhs))
            return false;
    }
    return true;
}

inline long objective_value(const BipModel& m, const std::vector<long>& x) {
    long v = m.objective_constant;
    for (const auto& t : m.objective) v += t.coef * x[t.var];
    return v;
}

class BipSolver {
public:
    virtual ~BipSolver() = default;
    virtual BipSolution solve(const BipModel& model) = 0;
};

// Depth-first branch and bound. Each node propagates constraint intervals to
// a fixpoint, bounds the objective by its interval maximum, then branches on
// the smallest open domain.
class BranchAndBound : public BipSolver {
public:
    explicit BranchAndBound(BipOptions options = {}) : options_(options) {}

    BipSolution solve(const BipModel& model) override {
        model_ = &model;
        const int n = model.var_count();
        obj_coef_.assign(n, 0);
        for (const auto& t : model.objective) obj_coef_[t.var] += t.coef;
        watching_.assign(n, {});
        for (std::size_t c = 0; c < model.constraints.size(); ++c)
            for (const auto& t : model.constraints[c].terms) watching_[t.var].push_back(static_cast<int>(c));
        best_.reset();
        best_value_ = std::numeric_limits<long>::min();
        nodes_ = 0;
        std::vector<long> lo(n), hi(n);
        for (int i = 0; i < n; ++i) {
            lo[i] = model.variables[i].lo;
            hi[i] = model.variables[i].hi;
        }
        search(lo, hi);
        BipSolution out;
        out.nodes = nodes_;
        if (best_) {
            out.status = BipStatus::optimal;
            out.assignment = *best_;
            out.objective_value = best_value_;
        }
        return out;
    }

private:
    bool propagate_constraint(const BipModel::Constraint& c, std::vector<long>& lo, std::vector<long>& hi,
                              std::vector<int>& changed) {
        long min_act = 0, max_act = 0;
        for (const auto& t : c.terms) {
            min_act += std::min(t.coef * lo[t.var], t.coef * hi[t.var]);
            max_act += std::max(t.coef * lo[t.var], t.coef * hi[t.var]);
        }
        const bool upper = c.rel != Relation::ge;  // activity <= rhs
        const bool lower = c.rel != Relation::le;  // activity >= rhs
        if ((upper && min_act > c.rhs) || (lower && max_act < c.rhs)) return false;
        for (const auto& t : c.terms) {
            if (t.coef == 0) continue;
            const int v = t.var;
            const long own_min = std::min(t.coef * lo[v], t.coef * hi[v]);
            const long own_max = std::max(t.coef * lo[v], t.coef * hi[v]);
            long new_lo = lo[v], new_hi = hi[v];
            if (upper) {
                // coef*x <= rhs - (min_act - own_min)
                const long cap = c.rhs - (min_act - own_min);
                if (t.coef > 0) new_hi = std::min(new_hi, floor_div(cap, t.coef));
                else new_lo = std::max(new_lo, ceil_div(cap, t.coef));
            }
            if (lower) {
                // coef*x >= rhs - (max_act - own_max)
                const long floor_v = c.rhs - (max_act - own_max);
                if (t.coef > 0) new_lo = std::max(new_lo, ceil_div(floor_v, t.coef));
                else new_hi = std::min(new_hi, floor_div(floor_v, t.coef));
            }
            if (new_lo > new_hi) return false;
            if (new_lo != lo[v] || new_hi != hi[v]) {
                // Recompute activities for the tightened variable.
                min_act += std::min(t.coef * new_lo, t.coef * new_hi) - own_min;
                max_act += std::max(t.coef * new_lo, t.coef * new_hi) - own_max;
                lo[v] = new_lo;
                hi[v] = new_hi;
                changed.push_back(v);
            }
        }
        return true;
    }

    bool propagate(std::vector<long>& lo, std::vector<long>& hi, const std::vector<int>& seeds) {
        const auto& cons = model_->constraints;
        std::vector<char> queued(cons.size(), 0);
        std::deque<int> queue;
        auto enqueue_var = [&](int v) {
            for (int c : watching_[v])
                if (!queued[c]) {
                    queued[c] = 1;
                    queue.push_back(c);
                }
        };
        if (seeds.empty()) {
            for (std::size_t c = 0; c < cons.size(); ++c) {
                queued[c] = 1;
                queue.push_back(static_cast<int>(c));
            }
        } else {
            for (int v : seeds) enqueue_var(v);
        }
        std::vector<int> changed;
        while (!queue.empty()) {
            const int c = queue.front();
            queue.pop_front();
            queued[c] = 0;
            changed.clear();
            if (!propagate_constraint(cons[c], lo, hi, changed)) return false;
            for (int v : changed) enqueue_var(v);
        }
        return true;
    }

    void search(std::vector<long> lo, std::vector<long> hi, int branched = -1) {
        if (++nodes_ > options_.node_budget)
            throw ResourceError("branch and bound exceeded its node budget of " + std::to_string(options_.node_budget));
        std::vector<int> seeds;
        if (branched >= 0) seeds.push_back(branched);
        if (!propagate(lo, hi, seeds)) return;
        long bound = model_->objective_constant;
        for (std::size_t v = 0; v < lo.size(); ++v) bound += std::max(obj_coef_[v] * lo[v], obj_coef_[v] * hi[v]);
        if (best_ && bound <= best_value_) return;
        int pick = -1;
        for (std::size_t v = 0; v < lo.size(); ++v) {
            if (lo[v] == hi[v]) continue;
            if (pick < 0 || hi[v] - lo[v] < hi[pick] - lo[pick]) pick = static_cast<int>(v);
        }
        if (pick < 0) {
            // All fixed and every constraint passed propagation.
            best_ = lo;
            best_value_ = bound;
            return;
        }
        const long a = lo[pick], b = hi[pick];
        const bool descending = obj_coef_[pick] > 0;
        for (long i = 0; i <= b - a; ++i) {
            const long value = descending ? b - i : a + i;
            lo[pick] = hi[pick] = value;
            search(lo, hi, pick);
        }
    }

    static long floor_div(long a, long b) {
        long q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
        return q;
    }
    static long ceil_div(long a, long b) { return -floor_div(-a, b); }

    BipOptions options_;
    const BipModel* model_ = nullptr;
    std::vector<long> obj_coef_;
    std::vector<std::vector<int>> watching_;
    std::optional<std::vector<long>> best_;
    long best_value_ = 0;
    long nodes_ = 0;
};

inline BipSolution solve(const BipModel& model, const BipOptions& options = {}) {
    return BranchAndBound(options).solve(model);
}

} // namespace mcsf
