#include "gk2dlp/sat.hpp"

#include <algorithm>
#include <cmath>

namespace gk2dlp::sat {

namespace {

double luby(double y, int x) {
    int size = 1;
    int seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    return std::pow(y, seq);
}

} // namespace

Solver::Solver() = default;

int Solver::new_var() {
    const int v = num_vars();
    assigns_.push_back(Undef);
    polarity_.push_back(1);
    reason_.push_back(-1);
    level_.push_back(0);
    activity_.push_back(0);
    seen_.push_back(0);
    heap_pos_.push_back(-1);
    watches_.resize(2 * static_cast<std::size_t>(v + 1));
    heap_insert(v);
    return v;
}

bool Solver::add_clause(std::vector<Lit> lits) {
    if (!ok_) return false;
    backtrack(0);
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::size_t j = 0;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        const Lit l = lits[i];
        if (i + 1 < lits.size() && lits[i + 1] == negate(l)) return true;
        const auto v = lit_value(l);
        if (v == True) return true;
        if (v == False) continue;
        lits[j++] = l;
    }
    lits.resize(j);
    if (lits.empty()) {
        ok_ = false;
        return false;
    }
    if (lits.size() == 1) {
        enqueue(lits[0], -1);
        if (propagate() != -1) ok_ = false;
        return ok_;
    }
    clauses_.push_back(Clause{std::move(lits)});
    attach(static_cast<int>(clauses_.size() - 1));
    return true;
}

void Solver::attach(int cref) {
    const auto& c = clauses_[static_cast<std::size_t>(cref)].lits;
    watches_[static_cast<std::size_t>(c[0])].push_back({cref, c[1]});
    watches_[static_cast<std::size_t>(c[1])].push_back({cref, c[0]});
}

void Solver::enqueue(Lit l, int reason) {
    const auto v = static_cast<std::size_t>(var_of(l));
    assigns_[v] = is_neg(l) ? False : True;
    level_[v] = level();
    reason_[v] = reason;
    trail_.push_back(l);
}

// Watch lists are indexed by the watched literal and visited when it becomes false.
int Solver::propagate() {
    while (qhead_ < trail_.size()) {
        const Lit falsified = negate(trail_[qhead_++]);
        auto& ws = watches_[static_cast<std::size_t>(falsified)];
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < ws.size()) {
            const Watcher w = ws[i++];
            Clause& c = clauses_[static_cast<std::size_t>(w.cref)];
            if (c.deleted) continue;
            if (lit_value(w.blocker) == True) {
                ws[j++] = w;
                continue;
            }
            auto& L = c.lits;
            if (L[0] == falsified) std::swap(L[0], L[1]);
            const Lit first = L[0];
            if (first != w.blocker && lit_value(first) == True) {
                ws[j++] = {w.cref, first};
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < L.size(); ++k) {
                if (lit_value(L[k]) != False) {
                    std::swap(L[1], L[k]);
                    watches_[static_cast<std::size_t>(L[1])].push_back({w.cref, first});
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            ws[j++] = w;
            if (lit_value(first) == False) {
                while (i < ws.size()) ws[j++] = ws[i++];
                ws.resize(j);
                qhead_ = trail_.size();
                return w.cref;
            }
            enqueue(first, w.cref);
        }
        ws.resize(j);
    }
    return -1;
}

namespace {

std::uint32_t abstract_level(int lvl) { return 1U << (static_cast<unsigned>(lvl) & 31U); }

} // namespace

bool Solver::redundant(Lit p, std::uint32_t levels) {
    analyze_stack_.clear();
    analyze_stack_.push_back(p);
    const std::size_t top = analyze_clear_.size();
    while (!analyze_stack_.empty()) {
        const int r = reason_[static_cast<std::size_t>(var_of(analyze_stack_.back()))];
        analyze_stack_.pop_back();
        const auto& c = clauses_[static_cast<std::size_t>(r)].lits;
        for (std::size_t i = 1; i < c.size(); ++i) {
            const Lit q = c[i];
            const auto v = static_cast<std::size_t>(var_of(q));
            if (seen_[v] || level_[v] == 0) continue;
            if (reason_[v] != -1 && (abstract_level(level_[v]) & levels) != 0) {
                seen_[v] = 1;
                analyze_stack_.push_back(q);
                analyze_clear_.push_back(q);
            } else {
                for (std::size_t k = top; k < analyze_clear_.size(); ++k) {
                    seen_[static_cast<std::size_t>(var_of(analyze_clear_[k]))] = 0;
                }
                analyze_clear_.resize(top);
                return false;
            }
        }
    }
    return true;
}

void Solver::analyze(int confl, std::vector<Lit>& learnt, int& bt_level) {
    learnt.clear();
    learnt.push_back(-1);
    int path = 0;
    Lit p = -1;
    auto index = static_cast<std::ptrdiff_t>(trail_.size()) - 1;
    do {
        Clause& c = clauses_[static_cast<std::size_t>(confl)];
        if (c.learnt) bump_clause(c);
        for (std::size_t j = (p == -1 ? 0 : 1); j < c.lits.size(); ++j) {
            const Lit q = c.lits[j];
            const auto v = static_cast<std::size_t>(var_of(q));
            if (!seen_[v] && level_[v] > 0) {
                bump_var(static_cast<int>(v));
                seen_[v] = 1;
                if (level_[v] >= level()) {
                    ++path;
                } else {
                    learnt.push_back(q);
                }
            }
        }
        while (!seen_[static_cast<std::size_t>(var_of(trail_[static_cast<std::size_t>(index--)]))]) {
        }
        p = trail_[static_cast<std::size_t>(index + 1)];
        confl = reason_[static_cast<std::size_t>(var_of(p))];
        seen_[static_cast<std::size_t>(var_of(p))] = 0;
        --path;
    } while (path > 0);
    learnt[0] = negate(p);

    analyze_clear_.assign(learnt.begin(), learnt.end());
    std::uint32_t levels = 0;
    for (std::size_t i = 1; i < learnt.size(); ++i) levels |= abstract_level(level_[static_cast<std::size_t>(var_of(learnt[i]))]);
    std::size_t j = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
        const auto v = static_cast<std::size_t>(var_of(learnt[i]));
        if (reason_[v] == -1 || !redundant(learnt[i], levels)) learnt[j++] = learnt[i];
    }
    learnt.resize(j);

    if (learnt.size() == 1) {
        bt_level = 0;
    } else {
        std::size_t max_i = 1;
        for (std::size_t i = 2; i < learnt.size(); ++i) {
            if (level_[static_cast<std::size_t>(var_of(learnt[i]))] > level_[static_cast<std::size_t>(var_of(learnt[max_i]))]) max_i = i;
        }
        std::swap(learnt[1], learnt[max_i]);
        bt_level = level_[static_cast<std::size_t>(var_of(learnt[1]))];
    }
    for (const Lit l : analyze_clear_) seen_[static_cast<std::size_t>(var_of(l))] = 0;
    seen_[static_cast<std::size_t>(var_of(learnt[0]))] = 0;
}

void Solver::backtrack(int lvl) {
    if (level() <= lvl) return;
    const auto stop = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(lvl)]);
    for (std::size_t c = trail_.size(); c-- > stop;) {
        const auto v = static_cast<std::size_t>(var_of(trail_[c]));
        polarity_[v] = is_neg(trail_[c]) ? 1 : 0;
        assigns_[v] = Undef;
        reason_[v] = -1;
        if (!heap_contains(static_cast<int>(v))) heap_insert(static_cast<int>(v));
    }
    trail_.resize(stop);
    trail_lim_.resize(static_cast<std::size_t>(lvl));
    qhead_ = trail_.size();
}

Lit Solver::pick_branch() {
    while (!heap_.empty()) {
        const int v = heap_pop();
        if (assigns_[static_cast<std::size_t>(v)] == Undef) return mk_lit(v, polarity_[static_cast<std::size_t>(v)] != 0);
    }
    return -1;
}

void Solver::bump_var(int v) {
    auto& a = activity_[static_cast<std::size_t>(v)];
    a += var_inc_;
    if (a > 1e100) {
        for (auto& x : activity_) x *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_contains(v)) heap_up(heap_pos_[static_cast<std::size_t>(v)]);
}

void Solver::bump_clause(Clause& c) {
    c.activity += cla_inc_;
    if (c.activity > 1e20) {
        for (auto& k : clauses_) {
            if (k.learnt) k.activity *= 1e-20;
        }
        cla_inc_ *= 1e-20;
    }
}

void Solver::reduce_db() {
    std::vector<int> cand;
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
        const Clause& c = clauses_[i];
        if (!c.learnt || c.deleted || c.lits.size() <= 2) continue;
        const auto v = static_cast<std::size_t>(var_of(c.lits[0]));
        const bool locked = reason_[v] == static_cast<int>(i) && lit_value(c.lits[0]) == True;
        if (!locked) cand.push_back(static_cast<int>(i));
    }
    std::sort(cand.begin(), cand.end(), [&](int a, int b) {
        return clauses_[static_cast<std::size_t>(a)].activity < clauses_[static_cast<std::size_t>(b)].activity;
    });
    for (std::size_t k = 0; k < cand.size() / 2; ++k) {
        Clause& c = clauses_[static_cast<std::size_t>(cand[k])];
        c.deleted = true;
        c.lits.clear();
        c.lits.shrink_to_fit();
        --learnt_count_;
    }
}

bool Solver::solve() {
    if (!ok_) return false;
    backtrack(0);
    if (propagate() != -1) {
        ok_ = false;
        return false;
    }
    if (max_learnts_ == 0) max_learnts_ = std::max(2000.0, static_cast<double>(clauses_.size()) / 3);
    std::vector<Lit> learnt;
    for (int restart = 0;; ++restart) {
        const auto budget = static_cast<std::uint64_t>(luby(2, restart) * 100);
        std::uint64_t local = 0;
        while (true) {
            const int confl = propagate();
            if (confl != -1) {
                ++conflicts_;
                ++local;
                if (level() == 0) {
                    ok_ = false;
                    return false;
                }
                int bt = 0;
                analyze(confl, learnt, bt);
                backtrack(bt);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], -1);
                } else {
                    clauses_.push_back(Clause{learnt, 0, true});
                    const int cref = static_cast<int>(clauses_.size() - 1);
                    attach(cref);
                    bump_clause(clauses_.back());
                    enqueue(learnt[0], cref);
                    ++learnt_count_;
                }
                var_inc_ /= 0.95;
                cla_inc_ /= 0.999;
                continue;
            }
            if (local >= budget) {
                backtrack(0);
                max_learnts_ *= 1.1;
                break;
            }
            if (static_cast<double>(learnt_count_) >= max_learnts_) reduce_db();
            const Lit next = pick_branch();
            if (next == -1) {
                model_.assign(assigns_.size(), false);
                for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == True;
                return true;
            }
            trail_lim_.push_back(static_cast<int>(trail_.size()));
            enqueue(next, -1);
        }
    }
}

void Solver::heap_insert(int v) {
    heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(static_cast<int>(heap_.size() - 1));
}

void Solver::heap_up(int i) {
    const int v = heap_[static_cast<std::size_t>(i)];
    const double a = activity_[static_cast<std::size_t>(v)];
    while (i > 0) {
        const int parent = (i - 1) / 2;
        const int pv = heap_[static_cast<std::size_t>(parent)];
        if (activity_[static_cast<std::size_t>(pv)] >= a) break;
        heap_[static_cast<std::size_t>(i)] = pv;
        heap_pos_[static_cast<std::size_t>(pv)] = i;
        i = parent;
    }
    heap_[static_cast<std::size_t>(i)] = v;
    heap_pos_[static_cast<std::size_t>(v)] = i;
}

void Solver::heap_down(int i) {
    const int v = heap_[static_cast<std::size_t>(i)];
    const double a = activity_[static_cast<std::size_t>(v)];
    const int n = static_cast<int>(heap_.size());
    while (true) {
        int child = 2 * i + 1;
        if (child >= n) break;
        if (child + 1 < n && activity_[static_cast<std::size_t>(heap_[static_cast<std::size_t>(child + 1)])] >
                                 activity_[static_cast<std::size_t>(heap_[static_cast<std::size_t>(child)])]) {
            ++child;
        }
        const int cv = heap_[static_cast<std::size_t>(child)];
        if (activity_[static_cast<std::size_t>(cv)] <= a) break;
        heap_[static_cast<std::size_t>(i)] = cv;
        heap_pos_[static_cast<std::size_t>(cv)] = i;
        i = child;
    }
    heap_[static_cast<std::size_t>(i)] = v;
    heap_pos_[static_cast<std::size_t>(v)] = i;
}

int Solver::heap_pop() {
    const int top = heap_.front();
    heap_pos_[static_cast<std::size_t>(top)] = -1;
    const int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_[0] = last;
        heap_pos_[static_cast<std::size_t>(last)] = 0;
        heap_down(0);
    }
    return top;
}

} // namespace gk2dlp::sat
