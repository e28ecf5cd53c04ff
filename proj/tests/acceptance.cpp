// Acceptance gate: every release criterion below runs end to end and prints
// exactly one PASS/FAIL line. The process exits nonzero if any criterion
// fails. Oracles here are deliberately naive re-derivations, not calls back
// into the routes under test.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

#include "spinfib/errors.hpp"
#include "spinfib/fib.hpp"
#include "spinfib/grid.hpp"
#include "spinfib/oeis.hpp"
#include "spinfib/sums.hpp"

using namespace spinfib;

namespace {

// --- small local helpers ----------------------------------------------------

struct CliResult {
    int status = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    setenv("SPINFIB_FIXTURE_DIR", SPINFIB_FIXTURE_DIR, 1);
    std::string cmd = std::string(SPINFIB_CLI_PATH) + " " + args + " 2>/dev/null";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

// Oracle: direct 2D fill of the grid from its definition (additions only).
std::vector<std::vector<Integer>> naive_grid(long long a, long long b, long long c, long long d,
                                             std::size_t dim) {
    std::vector<std::vector<Integer>> g(dim, std::vector<Integer>(dim));
    std::vector<Integer> outer(dim), inner(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        if (k == 0) {
            outer[k] = Integer(a);
            inner[k] = Integer(d);
        } else if (k == 1) {
            outer[k] = Integer(b);
            inner[k] = Integer(c);
        } else {
            outer[k] = outer[k - 1] + outer[k - 2];
            inner[k] = inner[k - 1] + inner[k - 2];
        }
    }
    Integer corner(b); // the b-corner convention
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) {
            if (j == 0)
                g[j][i] = (i == 1) ? corner : outer[i];
            else if (i == 0)
                g[j][i] = (j == 1) ? corner : outer[j];
            else if (j == 1)
                g[j][i] = inner[i];
            else if (i == 1)
                g[j][i] = inner[j];
            else
                g[j][i] = g[j - 1][i - 1] + g[j - 2][i - 2];
        }
    return g;
}

std::string cell_name(std::int64_t m, std::int64_t n) {
    return "(" + std::to_string(m) + ", " + std::to_string(n) + ")";
}

FetchOptions fixture_options() {
    FetchOptions opt;
    opt.offline = true;
    opt.fixture_dir = SPINFIB_FIXTURE_DIR;
    return opt;
}

// --- criteria ----------------------------------------------------------------

using Failure = std::optional<std::string>;

// The worked 8x8 example, rendered through the real command-line binary.
Failure criterion_worked_example() {
    const long long expected[8][8] = {
        {0, 1, 1, 2, 3, 5, 8, 13},      {1, 1, 2, 3, 5, 8, 13, 21},
        {1, 2, 1, 3, 4, 7, 11, 18},     {2, 3, 3, 2, 5, 7, 12, 19},
        {3, 5, 4, 5, 3, 8, 11, 19},     {5, 8, 7, 7, 8, 5, 13, 18},
        {8, 13, 11, 12, 11, 13, 8, 21}, {13, 21, 18, 19, 19, 18, 21, 13},
    };
    auto r = run_cli("grid --seeds 0,1,1,1 --size 7 --format json");
    if (r.status != 0) return "command exited with status " + std::to_string(r.status);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(r.out);
    } catch (const std::exception& e) {
        return std::string("unparseable output: ") + e.what();
    }
    if (doc["rows"].size() != 8) return "expected 8 rows";
    for (std::size_t n = 0; n < 8; ++n) {
        if (doc["rows"][n].size() != 8) return "row " + std::to_string(n) + " is not 8 wide";
        for (std::size_t m = 0; m < 8; ++m) {
            std::string got = doc["rows"][n][m].get<std::string>();
            std::string want = std::to_string(expected[n][m]);
            if (got != want)
                return "cell " + cell_name(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n)) +
                       ": rendered " + got + ", expected " + want;
        }
    }
    return std::nullopt;
}

// Closed form == recurrence on [0, 200]^2, several seed rows; the two-index
// formula matches both on the 0,1,1,1 row.
Failure criterion_closed_equals_recurrence() {
    const long long rows[][4] = {{0, 1, 1, 1}, {2, 1, 3, 4}, {1, 0, 0, 1}, {-2, 5, 1, -3}};
    constexpr std::int64_t bound = 200;
    for (auto [a, b, c, d] : rows) {
        SpinSeeds s{Integer(a), Integer(b), Integer(c), Integer(d)};
        auto rendered = grid_render(s, bound);
        for (std::int64_t n = 0; n <= bound; ++n)
            for (std::int64_t m = 0; m <= bound; ++m) {
                const Integer& rec = rendered[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
                Integer closed = grid_eval_closed(s, m, n);
                if (closed != rec)
                    return "seeds " + std::to_string(a) + "," + std::to_string(b) + "," +
                           std::to_string(c) + "," + std::to_string(d) + " cell " + cell_name(m, n) +
                           ": closed " + closed.to_string() + ", recurrence " + rec.to_string();
            }
    }
    SpinSeeds unit{Integer(0), Integer(1), Integer(1), Integer(1)};
    for (std::int64_t n = 0; n <= bound; ++n)
        for (std::int64_t m = 0; m <= bound; ++m)
            if (double_fib(m, n) != grid_eval_closed(unit, m, n))
                return "two-index formula diverges at " + cell_name(m, n);
    return std::nullopt;
}

// All 256 seed quadruples over {0..3}: library routes == naive oracle on
// [0, 60]^2 under the b-corner convention.
Failure criterion_seed_sweep() {
    constexpr std::int64_t bound = 60;
    constexpr std::size_t dim = bound + 1;
    for (long long a = 0; a <= 3; ++a)
        for (long long b = 0; b <= 3; ++b)
            for (long long c = 0; c <= 3; ++c)
                for (long long d = 0; d <= 3; ++d) {
                    auto oracle = naive_grid(a, b, c, d, dim);
                    SpinSeeds s{Integer(a), Integer(b), Integer(c), Integer(d)};
                    auto rendered = grid_render(s, bound);
                    for (std::size_t j = 0; j < dim; ++j)
                        for (std::size_t i = 0; i < dim; ++i) {
                            if (rendered[j][i] != oracle[j][i])
                                return "recurrence route diverges for seeds " + std::to_string(a) +
                                       "," + std::to_string(b) + "," + std::to_string(c) + "," +
                                       std::to_string(d) + " at " +
                                       cell_name(static_cast<std::int64_t>(i),
                                                 static_cast<std::int64_t>(j));
                            Integer closed = grid_eval_closed(s, static_cast<std::int64_t>(i),
                                                              static_cast<std::int64_t>(j));
                            if (closed != oracle[j][i])
                                return "closed route diverges for seeds " + std::to_string(a) + "," +
                                       std::to_string(b) + "," + std::to_string(c) + "," +
                                       std::to_string(d) + " at " +
                                       cell_name(static_cast<std::int64_t>(i),
                                                 static_cast<std::int64_t>(j));
                        }
                }
    return std::nullopt;
}

// Decomposition audit: the corrected split equals the grid on every
// off-diagonal cell; the literal split diverges by exactly (b-d) F(m-2) F(n-m)
// above the diagonal, worked example included.
Failure criterion_decomposition() {
    constexpr std::int64_t bound = 60;
    std::vector<std::array<long long, 4>> rows;
    for (long long a = 0; a <= 3; ++a)
        for (long long b = 0; b <= 3; ++b)
            for (long long c = 0; c <= 3; ++c)
                for (long long d = 0; d <= 3; ++d) rows.push_back({a, b, c, d});
    rows.push_back({2, 1, 3, 4});
    for (const auto& quad : rows) {
        SpinSeeds s{Integer(quad[0]), Integer(quad[1]), Integer(quad[2]), Integer(quad[3])};
        for (std::int64_t m = 0; m <= bound; ++m)
            for (std::int64_t n = 0; n <= bound; ++n) {
                if (m - n < 2 && n - m < 2) continue;
                Integer grid = grid_eval_closed(s, m, n);
                Integer corrected = grid_decompose(s, m, n, DecomposeVariant::CORRECTED);
                if (corrected != grid)
                    return "corrected split diverges at " + cell_name(m, n) + " for seeds " +
                           std::to_string(quad[0]) + "," + std::to_string(quad[1]) + "," +
                           std::to_string(quad[2]) + "," + std::to_string(quad[3]);
                Integer literal = grid_decompose(s, m, n, DecomposeVariant::LITERAL);
                Integer want_gap = (m < n) ? (s.b - s.d) * fib(m - 2) * fib(n - m) : Integer(0);
                if (literal - grid != want_gap)
                    return "literal split gap wrong at " + cell_name(m, n) + ": got " +
                           (literal - grid).to_string() + ", predicted " + want_gap.to_string();
            }
    }
    SpinSeeds worked{Integer(2), Integer(1), Integer(3), Integer(4)};
    if (grid_decompose(worked, 3, 5, DecomposeVariant::LITERAL) != Integer(20))
        return "worked literal cell is not 20";
    if (grid_eval_closed(worked, 3, 5) != Integer(23))
        return "worked oracle cell is not 23";
    return std::nullopt;
}

// Weighted seeded sums: closed form == direct accumulation for all small
// seed pairs out to n = 500.
Failure criterion_weighted_sums() {
    for (long long g0 = -3; g0 <= 3; ++g0)
        for (long long g1 = -3; g1 <= 3; ++g1) {
            Integer prev(g0), cur(g1), acc(0);
            for (std::int64_t n = 1; n <= 500; ++n) {
                if (n >= 2) {
                    prev += cur;
                    std::swap(prev, cur);
                }
                acc += Integer(n) * cur;
                Integer closed = weighted_gfs_sum_closed(Integer(g0), Integer(g1), n);
                if (closed != acc)
                    return "g0=" + std::to_string(g0) + " g1=" + std::to_string(g1) +
                           " n=" + std::to_string(n) + ": closed " + closed.to_string() +
                           ", direct " + acc.to_string();
            }
        }
    return std::nullopt;
}

// Triangle/square closed forms == streamed region sums out to 500, and their
// internal division by five stays exact out to 2000.
Failure criterion_region_closed_forms() {
    SpinSeeds unit{Integer(0), Integer(1), Integer(1), Integer(1)};
    for (std::int64_t m = 0; m <= 500; ++m) {
        Integer t_closed = triangle_sum_closed(m);
        Integer t_direct = region_sum(unit, Region::UPPER_INCL_DIAG, m);
        if (t_closed != t_direct)
            return "triangle m=" + std::to_string(m) + ": closed " + t_closed.to_string() +
                   ", direct " + t_direct.to_string();
        Integer q_closed = square_sum_closed(m);
        Integer q_direct = region_sum(unit, Region::FULL_SQUARE, m);
        if (q_closed != q_direct)
            return "square m=" + std::to_string(m) + ": closed " + q_closed.to_string() +
                   ", direct " + q_direct.to_string();
    }
    for (std::int64_t m = 0; m <= 2000; ++m) {
        try {
            triangle_sum_closed(m);
            square_sum_closed(m);
        } catch (const ArithmeticBug& e) {
            return "division by five failed at m=" + std::to_string(m) + ": " + e.what();
        }
    }
    return std::nullopt;
}

// The classical identity battery behind the closed forms.
Failure criterion_identities() {
    // doubling kernel vs repeated addition
    {
        Integer prev(0), cur(1);
        for (std::int64_t n = 0; n <= 3000; ++n) {
            if (n >= 2) {
                prev += cur;
                std::swap(prev, cur);
            }
            const Integer& expected = (n == 0) ? prev : cur;
            if (fib(n) != expected) return "kernel diverges from addition at n=" + std::to_string(n);
        }
    }
    // index addition law
    for (std::int64_t i = 0; i <= 500; ++i)
        for (std::int64_t j = 0; j <= i; ++j)
            if (fib(i) != fib(j) * fib(i - j + 1) + fib(j - 1) * fib(i - j))
                return "addition law fails at i=" + std::to_string(i) + " j=" + std::to_string(j);
    // Lucas bridges
    for (std::int64_t n = 1; n <= 1000; ++n) {
        if (lucas(n) != fib(n - 1) + fib(n + 1))
            return "Lucas neighbour identity fails at n=" + std::to_string(n);
        if (lucas(n - 1) + lucas(n + 1) != Integer(5) * fib(n))
            return "five-Fibonacci identity fails at n=" + std::to_string(n);
    }
    // reflection rule
    for (std::int64_t n = 0; n <= 1000; ++n) {
        Integer expected = (n % 2 == 0) ? -fib(n) : fib(n);
        if (fib(-n) != expected) return "reflection fails at n=" + std::to_string(n);
    }
    // self-convolution closed form
    {
        std::vector<Integer> table;
        table.emplace_back(0);
        table.emplace_back(1);
        for (std::int64_t k = 2; k <= 500; ++k)
            table.push_back(table[static_cast<std::size_t>(k - 1)] +
                            table[static_cast<std::size_t>(k - 2)]);
        for (std::int64_t n = 0; n <= 500; ++n) {
            Integer direct(0);
            for (std::int64_t k = 0; k <= n; ++k)
                direct += table[static_cast<std::size_t>(k)] * table[static_cast<std::size_t>(n - k)];
            if (fib_convolution(n) != direct)
                return "self-convolution fails at n=" + std::to_string(n);
        }
    }
    // weighted index sum
    {
        Integer prev(0), cur(1), acc(0);
        for (std::int64_t n = 1; n <= 2000; ++n) {
            if (n >= 2) {
                prev += cur;
                std::swap(prev, cur);
            }
            acc += Integer(n) * cur;
            if (weighted_fib_sum(n) != acc)
                return "weighted index sum fails at n=" + std::to_string(n);
        }
        if (weighted_fib_sum(6) != Integer(94)) return "weighted index sum anchor is not 94";
    }
    return std::nullopt;
}

// The 25 catalogued sequence claims, audited under both corner conventions
// against the bundled snapshots. 15 claims must hold under at least one
// convention (one of them only after a shift correction, recorded below);
// the other 10 are known catalogue discrepancies and must be exactly these.
Failure criterion_sequence_audit() {
    const std::set<std::size_t> known_discrepancies = {1, 2, 5, 7, 8, 13, 18, 20, 21, 22};
    constexpr std::size_t shift_corrected_claim = 24; // claimed at +11, actually at +1

    auto opt = fixture_options();
    auto b_reports = run_full_table(20, BoundaryConvention::B_WINS, opt);
    auto d_reports = run_full_table(20, BoundaryConvention::D_WINS, opt);
    if (b_reports.size() != 25 || d_reports.size() != 25) return "expected 25 reports per run";

    std::ostringstream table;
    for (std::size_t i = 0; i < 25; ++i) {
        const auto& rb = b_reports[i];
        const auto& rd = d_reports[i];
        if (!rb.error.empty()) return "claim " + std::to_string(i) + " errored: " + rb.error;
        if (!rd.error.empty()) return "claim " + std::to_string(i) + " errored: " + rd.error;

        auto verdict_name = [](const MatchReport& r) {
            if (r.verdict == Verdict::MATCH) return std::string("MATCH");
            if (r.verdict == Verdict::SHIFT_FOUND)
                return "SHIFT_FOUND(" + std::to_string(*r.found_shift) + ")";
            return std::string("MISMATCH");
        };
        table << "  claim " << i << " " << rb.anumber << " shift " << rb.claimed_shift
              << ": b-corner " << verdict_name(rb) << ", d-corner " << verdict_name(rd) << "\n";

        bool resolves = rb.verdict != Verdict::MISMATCH || rd.verdict != Verdict::MISMATCH;
        bool expected_discrepancy = known_discrepancies.count(i) > 0;
        if (expected_discrepancy && resolves)
            return "claim " + std::to_string(i) + " (" + rb.anumber +
                   ") unexpectedly resolves; the discrepancy catalogue is stale";
        if (!expected_discrepancy && !resolves)
            return "claim " + std::to_string(i) + " (" + rb.anumber +
                   ") fails under both conventions:\n" + table.str();
        if (i == shift_corrected_claim) {
            if (rb.verdict != Verdict::SHIFT_FOUND || !rb.found_shift || *rb.found_shift != 1)
                return "claim 24 (A014286) should resolve at shift +1";
        }
    }
    std::cout << table.str();
    return std::nullopt;
}

// The kernel computes the millionth Fibonacci number fast and with the known
// digit count, and agrees with repeated addition out to 5000.
Failure criterion_kernel_performance() {
    auto t0 = std::chrono::steady_clock::now();
    Integer big = fib(1000000);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (big.digit_count() != 208988)
        return "fib(1000000) has " + std::to_string(big.digit_count()) +
               " digits, expected 208988";
    if (secs >= 2.0) return "fib(1000000) took " + std::to_string(secs) + "s (budget 2s)";

    Integer prev(0), cur(1);
    for (std::int64_t n = 0; n <= 5000; ++n) {
        if (n >= 2) {
            prev += cur;
            std::swap(prev, cur);
        }
        const Integer& expected = (n == 0) ? prev : cur;
        if (fib(n) != expected) return "kernel diverges from addition at n=" + std::to_string(n);
    }
    return std::nullopt;
}

struct Criterion {
    std::string name;
    double budget_seconds; // 0: no explicit budget
    std::function<Failure()> run;
};

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"worked-example grid renders exactly through the command line", 1.0,
         criterion_worked_example},
        {"closed form equals the recurrence on [0,200]^2", 5.0, criterion_closed_equals_recurrence},
        {"all 256 small seed quadruples match the naive oracle on [0,60]^2", 60.0,
         criterion_seed_sweep},
        {"decomposition audit: corrected splits exact, literal gap law holds", 0.0,
         criterion_decomposition},
        {"weighted seeded sums close exactly out to n=500", 10.0, criterion_weighted_sums},
        {"triangle/square closed forms hold to 500 and divide exactly to 2000", 30.0,
         criterion_region_closed_forms},
        {"identity battery holds", 10.0, criterion_identities},
        {"sequence audit matches the frozen catalogue outcome", 0.0, criterion_sequence_audit},
        {"millionth Fibonacci number: 208988 digits inside the time budget", 0.0,
         criterion_kernel_performance},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& criterion = criteria[i];
        auto t0 = std::chrono::steady_clock::now();
        Failure failure;
        try {
            failure = criterion.run();
        } catch (const std::exception& e) {
            failure = std::string("threw: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!failure && criterion.budget_seconds > 0 && secs > criterion.budget_seconds)
            failure = "finished correct but took " + std::to_string(secs) + "s (budget " +
                      std::to_string(criterion.budget_seconds) + "s)";
        char line[512];
        std::snprintf(line, sizeof line, "%s criterion %zu: %s (%.2fs)",
                      failure ? "FAIL" : "PASS", i + 1, criterion.name.c_str(), secs);
        std::cout << line << '\n';
        if (failure) {
            std::cout << "     " << *failure << '\n';
            ++failures;
        }
    }
    if (failures > 0) {
        std::cout << failures << " criteria failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
