#pragma once

#include <cstdint>
#include <vector>

namespace gk2dlp::sat {

/// Literal encoding: 2*var for the positive, 2*var+1 for the negative literal.
using Lit = std::int32_t;

inline Lit mk_lit(int var, bool negative = false) { return 2 * var + (negative ? 1 : 0); }
inline int var_of(Lit l) { return l >> 1; }
inline bool is_neg(Lit l) { return (l & 1) != 0; }
inline Lit negate(Lit l) { return l ^ 1; }

/// Incremental CDCL solver: watched literals, first-UIP learning, VSIDS,
/// phase saving and Luby restarts. Clauses may be added between solve calls.
class Solver {
public:
    Solver();

    int new_var();
    int num_vars() const { return static_cast<int>(assigns_.size()); }

    /// Returns false once the clause set is known to be unsatisfiable.
    bool add_clause(std::vector<Lit> lits);

    /// true = satisfiable; the model is then available through value().
    bool solve();

    bool value(int var) const { return model_[static_cast<std::size_t>(var)]; }
    bool value_lit(Lit l) const { return value(var_of(l)) != is_neg(l); }

    std::uint64_t conflicts() const { return conflicts_; }

private:
    enum : std::int8_t { True = 0, False = 1, Undef = 2 };

    struct Clause {
        std::vector<Lit> lits;
        double activity = 0;
        bool learnt = false;
        bool deleted = false;
    };
    struct Watcher {
        int cref;
        Lit blocker;
    };

    std::int8_t lit_value(Lit l) const {
        const std::int8_t v = assigns_[static_cast<std::size_t>(var_of(l))];
        return v == Undef ? static_cast<std::int8_t>(Undef) : static_cast<std::int8_t>(v ^ (l & 1));
    }
    int level() const { return static_cast<int>(trail_lim_.size()); }

    void enqueue(Lit l, int reason);
    int propagate();
    void analyze(int confl, std::vector<Lit>& learnt, int& bt_level);
    bool redundant(Lit l, std::uint32_t levels);
    void backtrack(int lvl);
    Lit pick_branch();
    void attach(int cref);
    void bump_var(int v);
    void bump_clause(Clause& c);
    void reduce_db();

    // Binary heap over variable activity.
    void heap_insert(int v);
    void heap_up(int i);
    void heap_down(int i);
    int heap_pop();
    bool heap_contains(int v) const { return heap_pos_[static_cast<std::size_t>(v)] >= 0; }

    std::vector<Clause> clauses_;
    std::vector<std::vector<Watcher>> watches_;
    std::vector<std::int8_t> assigns_;
    std::vector<std::int8_t> polarity_;
    std::vector<int> reason_;
    std::vector<int> level_;
    std::vector<double> activity_;
    std::vector<char> seen_;
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;
    std::vector<int> heap_;
    std::vector<int> heap_pos_;
    std::vector<bool> model_;
    std::vector<Lit> analyze_stack_;
    std::vector<Lit> analyze_clear_;
    double var_inc_ = 1.0;
    double cla_inc_ = 1.0;
    std::size_t learnt_count_ = 0;
    double max_learnts_ = 0;
    std::uint64_t conflicts_ = 0;
    bool ok_ = true;
};

} // namespace gk2dlp::sat
