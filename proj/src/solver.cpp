#include "thuefib/solver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "thuefib/roots.hpp"

namespace thuefib::solver {

namespace {

void insert_solution(std::set<std::pair<mpz_class, mpz_class>>& seen,
                     std::vector<Solution>& out, const ThueInstance& inst,
                     const mpz_class& x, const mpz_class& y) {
    mpz_class v = inst.form_value(x, y);
    if (v != 1 && v != -1) return;
    if (!seen.insert({x, y}).second) return;
    Solution s;
    s.x = x;
    s.y = y;
    s.value = (v == 1) ? 1 : -1;
    s.trivial = ::abs(y) <= 1;
    out.push_back(s);
}

void add_with_negation(std::set<std::pair<mpz_class, mpz_class>>& seen,
                       std::vector<Solution>& out, const ThueInstance& inst,
                       const mpz_class& x, const mpz_class& y) {
    insert_solution(seen, out, inst, x, y);
    insert_solution(seen, out, inst, -x, -y);
}

void finalize(SolutionSet& set) {
    std::sort(set.solutions.begin(), set.solutions.end());
}

// Desk-scale exhaustive search with 128-bit arithmetic: |y| <= 1000 and
// |x| <= 1000 L_n + 1000.  Used for n <= 3, where the unit-exponent recovery
// over two real roots is unavailable.
void direct_search(const ThueInstance& inst, std::set<std::pair<mpz_class, mpz_class>>& seen,
                   std::vector<Solution>& out) {
    long F = inst.fib.get_si();
    long L = inst.luc.get_si();
    long ymax = 1000;
    long xmax = L * 1000 + 1000;
    for (long y = -ymax; y <= ymax; ++y) {
        __int128 y3 = static_cast<__int128>(y) * y * y;
        for (long x = -xmax; x <= xmax; ++x) {
            __int128 v = static_cast<__int128>(x - F * y) * (x - L * y) * x - y3;
            if (v == 1 || v == -1)
                add_with_negation(seen, out, inst, mpz_class(x), mpz_class(y));
        }
    }
}

}  // namespace

bool SolutionSet::contains(const mpz_class& x, const mpz_class& y) const {
    for (const Solution& s : solutions)
        if (s.x == x && s.y == y) return true;
    return false;
}

std::optional<int> verify(const ThueInstance& inst, const mpz_class& x, const mpz_class& y) {
    mpz_class v = inst.form_value(x, y);
    if (v == 1) return 1;
    if (v == -1) return -1;
    return std::nullopt;
}

SolutionSet trivial_solutions(const ThueInstance& inst) {
    SolutionSet set;
    set.n = inst.n;
    std::set<std::pair<mpz_class, mpz_class>> seen;
    // y = 0: X^3 = +-1.
    add_with_negation(seen, set.solutions, inst, 1, 0);
    // y = +-1 with (X - F)(X - L) X = 0.
    add_with_negation(seen, set.solutions, inst, 0, 1);
    add_with_negation(seen, set.solutions, inst, inst.fib, 1);
    add_with_negation(seen, set.solutions, inst, inst.luc, 1);
    // y = +-1 with (X -+ F)(X -+ L) X = +-2: x divides 2.
    for (long x : {-2L, -1L, 1L, 2L}) {
        add_with_negation(seen, set.solutions, inst, x, 1);
        add_with_negation(seen, set.solutions, inst, x, -1);
    }
    finalize(set);
    return set;
}

SolutionSet solve(const ThueInstance& inst, long b_box) {
    if (b_box < 1) throw std::invalid_argument("solve: box must be >= 1");
    SolutionSet set = trivial_solutions(inst);
    std::set<std::pair<mpz_class, mpz_class>> seen;
    for (const Solution& s : set.solutions) seen.insert({s.x, s.y});

    if (inst.n <= 3) {
        direct_search(inst, seen, set.solutions);
        finalize(set);
        return set;
    }

    // Unit-exponent enumeration: beta_i = +- eps_i^{b1} delta_i^{b2}.
    // One root computation covers the whole box; the precision keeps the
    // rounding radius of the worst pair safely below 1/4.
    long weight = 3 * b_box * inst.n + 2 * inst.n + 96;
    mpfr_prec_t prec0 = (mpfr_prec_t)(weight + weight / 2);
    auto found = with_escalation(prec0, [&](mpfr_prec_t p) {
        roots::RootTriple rt = roots::approx_roots(inst, p);
        std::vector<std::pair<mpz_class, mpz_class>> cands;
        for (long b1 = -b_box; b1 <= b_box; ++b1)
            for (long b2 = -b_box; b2 <= b_box; ++b2)
                for (int sign : {+1, -1}) {
                    units::ExponentPair e{b1, b2};
                    auto cand = units::recover_xy(inst, rt, e, sign);
                    if (cand) cands.push_back(*cand);
                }
        return cands;
    });
    for (auto& cand : found) {
        if (::abs(cand.second) <= 1) continue;  // trivial already listed
        add_with_negation(seen, set.solutions, inst, cand.first, cand.second);
    }
    finalize(set);
    return set;
}

}  // namespace thuefib::solver
