#include "gk2dlp/asp.hpp"

#include "gk2dlp/sat.hpp"

#include <algorithm>
#include <unordered_map>

namespace gk2dlp::dlp {

namespace {

using sat::Lit;
using sat::mk_lit;
using sat::negate;

struct IRule {
    std::vector<int> head;
    std::vector<int> pos;  // positive body
    std::vector<int> neg;  // `not l`
    std::vector<int> dneg; // `not not l`
};

class Engine {
public:
    Engine(const std::vector<FlatRule>& rules, const SolveOptions& options) : options_(options) {
        for (const auto& r : rules) {
            IRule ir;
            for (const auto& l : r.head) push_unique(ir.head, intern(l));
            for (const auto& b : r.body) {
                const int id = intern(b.lit);
                push_unique(b.nots == 0 ? ir.pos : (b.nots == 1 ? ir.neg : ir.dneg), id);
            }
            rules_.push_back(std::move(ir));
        }
        for (int i = 0; i < static_cast<int>(lits_.size()); ++i) sat_.new_var();
        true_var_ = sat_.new_var();
        sat_.add_clause({mk_lit(true_var_)});
        heads_of_.resize(lits_.size());
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            for (const int h : rules_[r].head) heads_of_[static_cast<std::size_t>(h)].push_back(static_cast<int>(r));
        }
        body_lit_.assign(rules_.size(), -1);
        encode();
        components();
        for (const auto& name : options_.project) {
            for (const bool positive : {true, false}) {
                auto it = index_.find(to_string(Literal{name, positive}));
                if (it != index_.end()) projection_.push_back(it->second);
            }
        }
        if (options_.project.empty()) {
            for (int i = 0; i < static_cast<int>(lits_.size()); ++i) projection_.push_back(i);
        }
    }

    std::vector<LiteralSet> run(SolveStats& stats) {
        std::vector<LiteralSet> out;
        while (sat_.solve()) {
            ++stats.candidates;
            std::vector<char> M(lits_.size());
            for (std::size_t i = 0; i < lits_.size(); ++i) M[i] = sat_.value(static_cast<int>(i)) ? 1 : 0;
            bool founded = true;
            for (const auto& comp : cyclic_) {
                auto U = unfounded(comp, M);
                if (U.empty()) continue;
                founded = false;
                ++stats.loop_formulas;
                add_loop_formula(U);
            }
            if (!founded) continue;
            LiteralSet s;
            for (std::size_t i = 0; i < lits_.size(); ++i) {
                if (M[i]) s.insert(lits_[i]);
            }
            out.push_back(std::move(s));
            ++stats.models;
            if (options_.max_models != 0 && out.size() >= options_.max_models) break;
            std::vector<Lit> block;
            for (const int p : projection_) block.push_back(mk_lit(p, M[static_cast<std::size_t>(p)] != 0));
            if (block.empty() || !sat_.add_clause(std::move(block))) break;
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    static void push_unique(std::vector<int>& v, int x) {
        if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
    }

    int intern(const Literal& l) {
        auto [it, inserted] = index_.emplace(to_string(l), static_cast<int>(lits_.size()));
        if (inserted) lits_.push_back(l);
        return it->second;
    }

    Lit body_lit(std::size_t r) {
        if (body_lit_[r] != -1) return body_lit_[r];
        const IRule& ir = rules_[r];
        std::vector<Lit> parts;
        for (const int b : ir.pos) parts.push_back(mk_lit(b));
        for (const int b : ir.neg) parts.push_back(mk_lit(b, true));
        for (const int b : ir.dneg) parts.push_back(mk_lit(b));
        Lit out;
        if (parts.empty()) {
            out = mk_lit(true_var_);
        } else if (parts.size() == 1) {
            out = parts.front();
        } else {
            // Only the forward direction is needed: the variable occurs positively.
            const int v = sat_.new_var();
            for (const Lit p : parts) sat_.add_clause({mk_lit(v, true), p});
            out = mk_lit(v);
        }
        body_lit_[r] = out;
        return out;
    }

    // Conjunction of a body and negated extra head literals, as a single literal.
    Lit support_term(std::size_t r, const std::vector<int>& others) {
        const Lit b = body_lit(r);
        if (others.empty()) return b;
        const int v = sat_.new_var();
        sat_.add_clause({mk_lit(v, true), b});
        for (const int h : others) sat_.add_clause({mk_lit(v, true), mk_lit(h, true)});
        return mk_lit(v);
    }

    void encode() {
        // Literal consistency.
        for (std::size_t i = 0; i < lits_.size(); ++i) {
            if (!lits_[i].positive) continue;
            auto it = index_.find(to_string(lits_[i].complement()));
            if (it != index_.end()) sat_.add_clause({mk_lit(static_cast<int>(i), true), mk_lit(it->second, true)});
        }
        // Rules as clauses.
        for (const auto& ir : rules_) {
            std::vector<Lit> c;
            for (const int h : ir.head) c.push_back(mk_lit(h));
            for (const int b : ir.pos) c.push_back(mk_lit(b, true));
            for (const int b : ir.neg) c.push_back(mk_lit(b));
            for (const int b : ir.dneg) c.push_back(mk_lit(b, true));
            sat_.add_clause(std::move(c));
        }
        // Support: a true literal needs a rule with true body and no other true head literal.
        for (std::size_t l = 0; l < lits_.size(); ++l) {
            std::vector<Lit> c{mk_lit(static_cast<int>(l), true)};
            bool trivially = false;
            for (const int r : heads_of_[l]) {
                std::vector<int> others;
                for (const int h : rules_[static_cast<std::size_t>(r)].head) {
                    if (h != static_cast<int>(l)) others.push_back(h);
                }
                const Lit t = support_term(static_cast<std::size_t>(r), others);
                if (t == mk_lit(true_var_)) {
                    trivially = true;
                    break;
                }
                c.push_back(t);
            }
            if (!trivially) sat_.add_clause(std::move(c));
        }
    }

    // Tarjan's algorithm, iterative.
    void components() {
        const std::size_t n = lits_.size();
        std::vector<std::vector<int>> succ(n);
        std::vector<char> self(n, 0);
        for (const auto& ir : rules_) {
            for (const int h : ir.head) {
                for (const int b : ir.pos) {
                    succ[static_cast<std::size_t>(h)].push_back(b);
                    if (b == h) self[static_cast<std::size_t>(h)] = 1;
                }
            }
        }
        comp_of_.assign(n, -1);
        std::vector<int> index(n, -1);
        std::vector<int> low(n, 0);
        std::vector<char> on_stack(n, 0);
        std::vector<int> stack;
        int counter = 0;
        int ncomp = 0;
        struct Frame {
            int v;
            std::size_t next;
        };
        for (std::size_t root = 0; root < n; ++root) {
            if (index[root] != -1) continue;
            std::vector<Frame> call{{static_cast<int>(root), 0}};
            index[root] = low[root] = counter++;
            stack.push_back(static_cast<int>(root));
            on_stack[root] = 1;
            while (!call.empty()) {
                Frame& f = call.back();
                const auto v = static_cast<std::size_t>(f.v);
                if (f.next < succ[v].size()) {
                    const auto w = static_cast<std::size_t>(succ[v][f.next++]);
                    if (index[w] == -1) {
                        index[w] = low[w] = counter++;
                        stack.push_back(static_cast<int>(w));
                        on_stack[w] = 1;
                        call.push_back({static_cast<int>(w), 0});
                    } else if (on_stack[w]) {
                        low[v] = std::min(low[v], index[w]);
                    }
                    continue;
                }
                if (low[v] == index[v]) {
                    std::vector<int> comp;
                    int w = 0;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = 0;
                        comp_of_[static_cast<std::size_t>(w)] = ncomp;
                        comp.push_back(w);
                    } while (w != f.v);
                    ++ncomp;
                    if (comp.size() > 1 || self[v]) {
                        std::sort(comp.begin(), comp.end());
                        cyclic_.push_back(std::move(comp));
                    }
                }
                call.pop_back();
                if (!call.empty()) {
                    const auto u = static_cast<std::size_t>(call.back().v);
                    low[u] = std::min(low[u], low[v]);
                }
            }
        }
    }

    bool body_true(const IRule& ir, const std::vector<char>& M) const {
        for (const int b : ir.pos) {
            if (!M[static_cast<std::size_t>(b)]) return false;
        }
        for (const int b : ir.neg) {
            if (M[static_cast<std::size_t>(b)]) return false;
        }
        for (const int b : ir.dneg) {
            if (!M[static_cast<std::size_t>(b)]) return false;
        }
        return true;
    }

    // A nonempty unfounded subset of the true literals of one component, if any.
    std::vector<int> unfounded(const std::vector<int>& comp, const std::vector<char>& M) {
        const int cid = comp_of_[static_cast<std::size_t>(comp.front())];
        std::unordered_map<int, int> local;
        std::vector<int> members;
        for (const int a : comp) {
            if (M[static_cast<std::size_t>(a)]) {
                local.emplace(a, static_cast<int>(members.size()));
                members.push_back(a);
            }
        }
        if (members.empty()) return {};
        sat::Solver chk;
        for (std::size_t i = 0; i < members.size(); ++i) chk.new_var();
        std::vector<Lit> some;
        for (std::size_t i = 0; i < members.size(); ++i) some.push_back(mk_lit(static_cast<int>(i)));
        chk.add_clause(std::move(some));
        for (const int a : members) {
            for (const int r : heads_of_[static_cast<std::size_t>(a)]) {
                const IRule& ir = rules_[static_cast<std::size_t>(r)];
                if (!body_true(ir, M)) continue;
                std::vector<Lit> c{mk_lit(local.at(a), true)};
                bool external = false;
                for (const int h : ir.head) {
                    if (h == a || !M[static_cast<std::size_t>(h)]) continue;
                    if (comp_of_[static_cast<std::size_t>(h)] != cid) {
                        external = true;
                        break;
                    }
                    c.push_back(mk_lit(local.at(h), true));
                }
                if (external) continue;
                for (const int b : ir.pos) {
                    if (comp_of_[static_cast<std::size_t>(b)] == cid) c.push_back(mk_lit(local.at(b)));
                }
                chk.add_clause(std::move(c));
            }
        }
        if (!chk.solve()) return {};
        std::vector<int> U;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (chk.value(static_cast<int>(i))) U.push_back(members[i]);
        }
        return U;
    }

    void add_loop_formula(const std::vector<int>& U) {
        std::vector<char> inU(lits_.size(), 0);
        for (const int a : U) inU[static_cast<std::size_t>(a)] = 1;
        std::vector<int> rules;
        for (const int a : U) {
            for (const int r : heads_of_[static_cast<std::size_t>(a)]) push_unique(rules, r);
        }
        std::vector<Lit> terms;
        for (const int r : rules) {
            const IRule& ir = rules_[static_cast<std::size_t>(r)];
            if (std::any_of(ir.pos.begin(), ir.pos.end(), [&](int b) { return inU[static_cast<std::size_t>(b)] != 0; })) continue;
            std::vector<int> others;
            for (const int h : ir.head) {
                if (!inU[static_cast<std::size_t>(h)]) others.push_back(h);
            }
            terms.push_back(support_term(static_cast<std::size_t>(r), others));
        }
        if (U.size() == 1) {
            std::vector<Lit> c = terms;
            c.push_back(mk_lit(U.front(), true));
            sat_.add_clause(std::move(c));
            return;
        }
        const int w = sat_.new_var();
        std::vector<Lit> c = terms;
        c.push_back(mk_lit(w, true));
        sat_.add_clause(std::move(c));
        for (const int a : U) sat_.add_clause({mk_lit(a, true), mk_lit(w)});
    }

    SolveOptions options_;
    std::vector<IRule> rules_;
    std::vector<Literal> lits_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> heads_of_;
    std::vector<Lit> body_lit_;
    std::vector<int> comp_of_;
    std::vector<std::vector<int>> cyclic_;
    std::vector<int> projection_;
    sat::Solver sat_;
    int true_var_ = 0;
};

} // namespace

std::vector<LiteralSet> solve(const std::vector<FlatRule>& rules, const SolveOptions& options, SolveStats* stats) {
    SolveStats local;
    Engine e(rules, options);
    auto out = e.run(stats != nullptr ? *stats : local);
    return out;
}

std::vector<LiteralSet> solve(const Program& P, const SolveOptions& options, SolveStats* stats) {
    return solve(flatten(P), options, stats);
}

} // namespace gk2dlp::dlp
