#include "pnf/diagnostics.hpp"

#include <algorithm>
#include <optional>
#include <thread>

#include "pnf/enumerate.hpp"
#include "pnf/errors.hpp"

namespace pnf {

unsigned set_real_precision(unsigned digits) {
    unsigned prev = Real::default_precision();
    Real::default_precision(digits);
    return prev;
}

Real rational_to_real(const Rational& q) {
    return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

namespace {

struct ShellMin {
    bool have = false;
    Rational best_sq;        // squared modulus of the best divisor
    Scalar best_value;
    Monomial best_arg;       // empty when the entry is a value-only seed

    // Ties resolve toward the graded-lex smallest witness (concrete beats a
    // value-only seed), so results do not depend on scan order or threading.
    void offer(const Rational& sq, const Scalar& v, const Monomial& m) {
        bool take = false;
        if (!have || sq < best_sq) {
            take = true;
        } else if (sq == best_sq && !m.e.empty()) {
            take = best_arg.e.empty() || grlex_cmp(m, best_arg) < 0;
        }
        if (take) {
            have = true;
            best_sq = sq;
            best_value = v;
            best_arg = m;
        }
    }
    void merge(const ShellMin& o) {
        if (o.have) offer(o.best_sq, o.best_value, o.best_arg);
    }
};

// Divisor |lambda| - 1 + <w, lambda> at fixed shell size s. Real weights
// admit interval pruning: with suffix weight bounds, a subtree whose divisor
// interval stays outside (-best, best) cannot improve the minimum.
class ShellScanner {
public:
    ShellScanner(const std::vector<Scalar>& w, int shell) : w_(w), shell_(shell) {
        all_real_ = std::all_of(w.begin(), w.end(), [](const Scalar& s) { return s.is_real(); });
        if (all_real_) {
            size_t n = w.size();
            lo_.assign(n + 1, Rational(0));
            hi_.assign(n + 1, Rational(0));
            for (size_t i = n; i-- > 0;) {
                Rational wi = w[i].re;
                lo_[i] = std::min(lo_[i + 1], wi);
                hi_[i] = std::max(hi_[i + 1], wi);
            }
        }
    }

    // first coordinate restricted to [first_lo, first_hi] for chunked scans
    ShellMin scan(int first_lo, int first_hi, std::optional<Rational> seed_sq,
                  unsigned long long& visited) const {
        ShellMin acc;
        if (seed_sq) {
            acc.have = true;
            acc.best_sq = *seed_sq;
        }
        Monomial m(static_cast<int>(w_.size()));
        if (w_.empty()) return acc;
        if (w_.size() == 1) {
            if (first_lo <= shell_ && shell_ <= first_hi) {
                m.e[0] = static_cast<uint32_t>(shell_);
                Scalar value = Scalar(static_cast<long>(shell_ - 1)) +
                               w_[0] * Scalar(static_cast<long>(shell_));
                ++visited;
                acc.offer(value.abs2(), value, m);
            }
            return acc;
        }
        for (int v = first_lo; v <= std::min(first_hi, shell_); ++v) {
            m.e[0] = static_cast<uint32_t>(v);
            Scalar partial = Scalar(static_cast<long>(shell_ - 1)) +
                             w_[0] * Scalar(static_cast<long>(v));
            rec(m, 1, shell_ - v, partial, acc, visited);
        }
        m.e[0] = 0;
        return acc;
    }

private:
    const std::vector<Scalar>& w_;
    int shell_;
    bool all_real_ = false;
    std::vector<Rational> lo_, hi_;

    void rec(Monomial& m, size_t pos, int budget, const Scalar& partial, ShellMin& acc,
             unsigned long long& visited) const {
        if (pos == w_.size() - 1) {
            m.e[pos] = static_cast<uint32_t>(budget);
            Scalar value = partial + w_[pos] * Scalar(static_cast<long>(budget));
            ++visited;
            acc.offer(value.abs2(), value, m);
            m.e[pos] = 0;
            return;
        }
        if (all_real_ && acc.have) {
            // Reachable divisor interval over all completions of the budget;
            // prune only on a strict miss so tie witnesses stay canonical.
            Rational lo = partial.re + Rational(budget) * lo_[pos];
            Rational hi = partial.re + Rational(budget) * hi_[pos];
            if (lo > 0 || hi < 0) {
                Rational min_abs_sq = (lo > 0) ? lo * lo : hi * hi;
                if (min_abs_sq > acc.best_sq) return;
            }
        }
        for (int v = budget; v >= 0; --v) {
            m.e[pos] = static_cast<uint32_t>(v);
            rec(m, pos + 1, budget - v, partial + w_[pos] * Scalar(static_cast<long>(v)), acc,
                visited);
        }
        m.e[pos] = 0;
    }
};

unsigned long long count_monomials_through(int nvars, long max_degree) {
    // sum_{s=0..D} C(s+n-1, n-1) = C(D+n, n)
    mpz_class binom = 1;
    for (int k = 1; k <= nvars; ++k) binom = binom * mpz_class(max_degree + k) / k;
    if (!binom.fits_ulong_p()) return ~0ull;
    return binom.get_ui();
}

}  // namespace

unsigned long long omega_enumeration_budget(int nvars, int d_max) {
    long top_shell = 1l << (d_max + 1);
    unsigned long long all = count_monomials_through(nvars, top_shell);
    if (all == ~0ull) return all;
    // shells 0 and 1 are outside the scan
    return all - 1 - static_cast<unsigned long long>(nvars);
}

DivisorProfile omega_sequence(const std::vector<Scalar>& weights, int d_max, int threads,
                              unsigned precision_digits) {
    if (d_max < 1) throw InputError("bad-dmax", "d_max must be at least 1");
    if (d_max > 6) throw InputError("enumeration-too-large", "d_max beyond 6 is not feasible");
    int n = static_cast<int>(weights.size());
    unsigned long long budget = omega_enumeration_budget(n, d_max);
    if (budget > 2000000000ull)
        throw InputError("enumeration-too-large",
                         "the shell enumeration would visit " + std::to_string(budget) +
                             " lattice points; lower d_max");
    set_real_precision(precision_digits);

    DivisorProfile profile;
    profile.d_max = d_max;
    profile.budget = budget;
    profile.exact =
        std::all_of(weights.begin(), weights.end(), [](const Scalar& s) { return s.is_real(); });

    ShellMin running;
    unsigned long long visited = 0;
    VarNames names{0, n};
    int shell = 2;
    Real bruno_sum = 0;
    for (int d = 1; d <= d_max; ++d) {
        for (; shell <= (1ll << (d + 1)); ++shell) {
            ShellScanner scanner(weights, shell);
            int nthreads = std::max(1, threads);
            if (nthreads == 1 || n < 2 || shell < 8) {
                ShellMin sm = scanner.scan(0, shell,
                                           running.have ? std::optional<Rational>(running.best_sq)
                                                        : std::nullopt,
                                           visited);
                running.merge(sm);
            } else {
                // Deterministic: chunk by the first exponent; merge in order.
                std::vector<ShellMin> results(static_cast<size_t>(nthreads));
                std::vector<unsigned long long> counts(static_cast<size_t>(nthreads), 0);
                std::vector<std::thread> pool;
                std::optional<Rational> seed =
                    running.have ? std::optional<Rational>(running.best_sq) : std::nullopt;
                int per = (shell + nthreads) / nthreads;
                for (int t = 0; t < nthreads; ++t) {
                    int lo = t * per, hi = std::min(shell, (t + 1) * per - 1);
                    if (lo > shell) break;
                    pool.emplace_back([&, t, lo, hi] {
                        results[static_cast<size_t>(t)] = scanner.scan(
                            lo, hi, seed, counts[static_cast<size_t>(t)]);
                    });
                }
                for (auto& th : pool) th.join();
                for (int t = 0; t < nthreads; ++t) {
                    running.merge(results[static_cast<size_t>(t)]);
                    visited += counts[static_cast<size_t>(t)];
                }
            }
        }
        if (running.have && running.best_sq == 0)
            throw DomainError("resonance", "a small divisor vanishes; the omega-condition is "
                                           "vacuously violated",
                              {{"monomial", Poly::monomial(n, running.best_arg, Scalar(1))
                                                .str(names)}});
        OmegaEntry entry;
        entry.d = d;
        Rational cap(1, 2 * d);
        Rational cap_sq = cap * cap;
        bool use_cap = !running.have || cap_sq <= running.best_sq;
        entry.exact = profile.exact;
        if (use_cap) {
            entry.value_sq = cap_sq;
            entry.value_exact = cap;
            entry.value = rational_to_real(cap);
        } else {
            entry.value_sq = running.best_sq;
            if (profile.exact) {
                Rational v = abs(running.best_value.re);
                entry.value_exact = v;
                entry.value = rational_to_real(v);
            } else {
                entry.value = sqrt(rational_to_real(running.best_sq));
            }
        }
        bruno_sum += -log(entry.value) / rational_to_real(Rational(static_cast<long>(1l << d)));
        profile.bruno_partials.push_back(bruno_sum);
        profile.omegas.push_back(std::move(entry));
    }
    profile.enumerated = visited;
    return profile;
}

SiegelReport siegel_check(const std::vector<Scalar>& gamma, const Rational& c, int s,
                          int lambda_max) {
    if (c <= 0) throw InputError("bad-constant", "the Siegel constant c must be positive");
    if (s <= static_cast<int>(gamma.size()))
        throw InputError("bad-exponent", "the Siegel exponent must exceed the dimension");
    SiegelReport report;
    int n = static_cast<int>(gamma.size());
    Rational c_sq = c * c;
    for (int shell = 2; shell <= lambda_max; ++shell) {
        // |lambda|^{2s} is shared across the shell.
        Rational shell_pow(1);
        for (int k = 0; k < 2 * s; ++k) shell_pow *= shell;
        enumerate_degree(n, shell, [&](const Monomial& lambda) {
            ++report.scanned;
            Scalar divisor(static_cast<long>(shell - 1));
            for (int i = 0; i < n; ++i) {
                uint32_t e = lambda.e[static_cast<size_t>(i)];
                if (e != 0) divisor += gamma[static_cast<size_t>(i)] * Scalar(static_cast<long>(e));
            }
            Rational margin_sq = divisor.abs2() * shell_pow;
            if (!report.has_margin || margin_sq < report.min_margin_sq) {
                report.has_margin = true;
                report.min_margin_sq = margin_sq;
                report.margin_argmin = lambda;
            }
            if (margin_sq < c_sq) report.violations.push_back({lambda, divisor});
        });
    }
    return report;
}

Real majorant_norm(const Poly& f, const Real& rho) {
    Real sum = 0;
    for (const auto& [m, c] : f.terms()) {
        Real coeff = sqrt(rational_to_real(c.abs2()));
        sum += coeff * pow(rho, m.degree());
    }
    return sum;
}

Rational majorant_norm_exact(const Poly& f, const Rational& rho) {
    if (rho <= 0) throw InputError("bad-radius", "rho must be positive");
    Rational sum(0);
    for (const auto& [m, c] : f.terms()) {
        if (!c.is_real())
            throw InputError("not-rational",
                             "exact majorant norms require real rational coefficients");
        Rational p(1);
        for (int k = 0; k < m.degree(); ++k) p *= rho;
        sum += abs(c.re) * p;
    }
    return sum;
}

RadiiSchedule radii_schedule(const DivisorProfile& profile, unsigned precision_digits) {
    set_real_precision(precision_digits);
    RadiiSchedule schedule;
    Real rho_prev = 1;
    Real rho_before = 1;
    for (const OmegaEntry& entry : profile.omegas) {
        if (entry.value_sq == 0)
            throw DomainError("resonance", "radii are undefined on a resonant profile");
        int d = entry.d;
        Real omega = entry.value;
        Real base = omega / rational_to_real(Rational(static_cast<long>(1l << d)));
        Real r = pow(base, Real(1) / Real((1ll << d) + 1)) * rho_prev;
        // Quadratic damping, indexed from d + 1: an unshifted 1 - 1/d^2
        // vanishes at d = 1 and would collapse every later radius.
        Real rho = (Real(1) - Real(1) / Real((d + 1) * (d + 1))) * r;
        schedule.entries.push_back({d, r, rho});
        rho_before = rho_prev;
        rho_prev = rho;
    }
    schedule.limit_estimate = rho_prev;
    schedule.last_step = rho_before - rho_prev;
    return schedule;
}

std::vector<RadiiLemmaEntry> radii_lemma_report(const RadiiSchedule& schedule) {
    std::vector<RadiiLemmaEntry> out;
    for (size_t k = 0; k < schedule.entries.size(); ++k) {
        const RadiiEntry& e = schedule.entries[k];
        RadiiLemmaEntry row;
        row.d = e.d;
        Real gap = rational_to_real(Rational(1, static_cast<long>(1l << e.d)));
        row.a_holds = (e.r - e.rho) > gap;
        row.b_holds =
            k + 1 < schedule.entries.size() && (e.rho - schedule.entries[k + 1].r) > gap;
        out.push_back(row);
    }
    return out;
}

}  // namespace pnf
