#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinfib/integer.hpp"
#include "spinfib/sums.hpp"

namespace spinfib {

/// A contiguous run of terms of a catalogued integer sequence.
struct SequenceRecord {
    std::string anumber;        ///< "A" + six digits
    std::int64_t offset = 0;    ///< index of terms.front()
    std::vector<Integer> terms; ///< values at offset, offset+1, ...

    bool contains(std::int64_t index) const noexcept {
        return index >= offset && index - offset < static_cast<std::int64_t>(terms.size());
    }
    const Integer& at(std::int64_t index) const {
        if (!contains(index)) throw DomainError("index outside record range");
        return terms[static_cast<std::size_t>(index - offset)];
    }
    std::int64_t last_index() const noexcept {
        return offset + static_cast<std::int64_t>(terms.size()) - 1;
    }
};

/// Parse b-file text ("index value" per line, '#' comments, blank lines,
/// LF or CRLF). Indices must be consecutive. Throws ParseError with the
/// offending line number otherwise, or if no terms are present.
SequenceRecord parse_bfile(std::string_view text, std::string_view anumber = "A000000");

/// Inverse of parse_bfile, one "index value\n" line per term.
std::string serialize_bfile(const SequenceRecord& rec);

/// Where sequence bytes come from. Empty path/url fields are filled from the
/// environment (SPINFIB_FIXTURE_DIR, SPINFIB_CACHE_DIR, SPINFIB_OEIS_BASE)
/// and then from built-in defaults.
struct FetchOptions {
    bool offline = true;              ///< offline: read bundled fixtures, no network
    std::filesystem::path fixture_dir;
    std::filesystem::path cache_dir;  ///< online responses are cached here
    std::string base_url;             ///< e.g. "https://oeis.org"
    std::size_t size_cap = 8u * 1024u * 1024u;

    static FetchOptions from_env();
};

/// Raw b-file bytes for one sequence. Offline mode reads
/// fixture_dir/bNNNNNN.txt; online mode serves from cache_dir when possible,
/// otherwise issues one GET to base_url/ANNNNNN/bNNNNNN.txt and caches the
/// body (write-temp-then-rename). Throws FetchError on any failure.
std::string fetch_bfile(const std::string& anumber, const FetchOptions& opt = FetchOptions::from_env());

enum class Verdict { MATCH, MISMATCH, SHIFT_FOUND };

struct Divergence {
    std::int64_t index; ///< position in the computed sum sequence
    Integer expected;   ///< record term at the claimed shift
    Integer actual;     ///< computed sum
};

/// Outcome of checking one claimed sequence identification.
struct MatchReport {
    SpinSeeds row_seeds;
    Region region = Region::LOWER_STRICT;
    std::string anumber;
    std::int64_t claimed_shift = 0;
    BoundaryConvention convention = BoundaryConvention::B_WINS;
    std::int64_t compared_count = 0;
    Verdict verdict = Verdict::MISMATCH;
    std::optional<std::int64_t> found_shift;   ///< set iff verdict == SHIFT_FOUND
    std::optional<Divergence> first_divergence; ///< set when the claimed shift diverges
    std::string error; ///< nonempty iff the check could not run (fetch/parse/overlap)
};

/// One catalogued claim: sums of `region` over the grid seeded by `seeds`
/// are said to equal anumber(n + shift).
struct TableClaim {
    std::array<int, 4> seeds; ///< a, b, c, d
    Region region;
    const char* anumber;
    std::int64_t shift;
};

/// The 25 catalogued claims, row-major (seed row by seed row, each row's
/// lower / upper / full-square claims in that order).
const std::vector<TableClaim>& claims_catalog();

/// Check one claim: compare sum_sequence(seeds, region, count) against the
/// record at the claimed shift; on divergence, scan shifts in [-3, 12] and
/// report SHIFT_FOUND iff exactly one of them matches over >= 5 terms.
/// Requires count >= 5; throws InsufficientOverlap when fewer than 5 terms
/// line up at the claimed shift, and propagates fetch/parse errors.
MatchReport check_table_row(const SpinSeeds& seeds, Region region, const std::string& anumber,
                            std::int64_t claimed_shift, std::int64_t count,
                            BoundaryConvention conv = BoundaryConvention::B_WINS,
                            const FetchOptions& opt = FetchOptions::from_env());

/// Check every catalogued claim, fetching distinct sequences with at most 4
/// in flight. Per-claim failures are recorded in MatchReport::error; the
/// result always has exactly one report per claim, in catalog order.
std::vector<MatchReport> run_full_table(std::int64_t count = 20,
                                        BoundaryConvention conv = BoundaryConvention::B_WINS,
                                        const FetchOptions& opt = FetchOptions::from_env());

} // namespace spinfib
