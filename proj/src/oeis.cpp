#include "spinfib/oeis.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <semaphore>
#include <set>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "httplib.h"

#include "spinfib/errors.hpp"

#ifndef SPINFIB_DEFAULT_FIXTURE_DIR
#define SPINFIB_DEFAULT_FIXTURE_DIR "data/fixtures"
#endif

namespace spinfib {

namespace {

bool valid_anumber(std::string_view a) {
    if (a.size() != 7 || a[0] != 'A') return false;
    return std::all_of(a.begin() + 1, a.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string bfile_name(std::string_view anumber) {
    return "b" + std::string(anumber.substr(1)) + ".txt";
}

std::filesystem::path default_cache_dir() {
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x)
        return std::filesystem::path(x) / "spinfib";
    if (const char* h = std::getenv("HOME"); h && *h)
        return std::filesystem::path(h) / ".cache" / "spinfib";
    return std::filesystem::temp_directory_path() / "spinfib-cache";
}

FetchOptions resolve(FetchOptions opt) {
    if (opt.fixture_dir.empty()) {
        if (const char* e = std::getenv("SPINFIB_FIXTURE_DIR"); e && *e)
            opt.fixture_dir = e;
        else
            opt.fixture_dir = SPINFIB_DEFAULT_FIXTURE_DIR;
    }
    if (opt.cache_dir.empty()) {
        if (const char* e = std::getenv("SPINFIB_CACHE_DIR"); e && *e)
            opt.cache_dir = e;
        else
            opt.cache_dir = default_cache_dir();
    }
    if (opt.base_url.empty()) {
        if (const char* e = std::getenv("SPINFIB_OEIS_BASE"); e && *e)
            opt.base_url = e;
        else
            opt.base_url = "https://oeis.org";
    }
    return opt;
}

std::string read_file_capped(const std::filesystem::path& p, std::size_t cap,
                             const std::string& what) {
    std::error_code ec;
    auto size = std::filesystem::file_size(p, ec);
    if (ec) throw FetchError(what + ": cannot read " + p.string() + " (" + ec.message() + ")");
    if (size > cap)
        throw FetchError(what + ": " + p.string() + " exceeds size cap of " +
                         std::to_string(cap) + " bytes");
    std::ifstream in(p, std::ios::binary);
    if (!in) throw FetchError(what + ": cannot open " + p.string());
    std::string body(static_cast<std::size_t>(size), '\0');
    in.read(body.data(), static_cast<std::streamsize>(size));
    if (!in) throw FetchError(what + ": short read on " + p.string());
    return body;
}

void write_file_atomically(const std::filesystem::path& dest, const std::string& body) {
    std::filesystem::create_directories(dest.parent_path());
    auto tmp = dest;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        if (!out) {
            std::error_code ignore;
            std::filesystem::remove(tmp, ignore);
            return; // cache write failure is not a fetch failure
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, dest, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

std::string http_get_bfile(const std::string& anumber, const FetchOptions& opt) {
    httplib::Client client(opt.base_url);
    if (!client.is_valid())
        throw FetchError("unsupported or malformed base url: " + opt.base_url);
    client.set_follow_location(true);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(30, 0);
    std::string body;
    bool over_cap = false;
    auto res = client.Get("/" + anumber + "/" + bfile_name(anumber),
                          [&](const char* data, std::size_t len) {
                              body.append(data, len);
                              if (body.size() > opt.size_cap) {
                                  over_cap = true;
                                  return false;
                              }
                              return true;
                          });
    if (over_cap)
        throw FetchError(anumber + ": response exceeds size cap of " +
                         std::to_string(opt.size_cap) + " bytes");
    if (!res)
        throw FetchError(anumber + ": network error (" + httplib::to_string(res.error()) + ")");
    if (res->status != 200)
        throw FetchError(anumber + ": HTTP status " + std::to_string(res->status) + " from " +
                         opt.base_url);
    return body;
}

struct ShiftComparison {
    std::int64_t compared = 0;
    std::optional<Divergence> divergence;
};

ShiftComparison compare_at_shift(const std::vector<Integer>& sums, const SequenceRecord& rec,
                                 std::int64_t shift) {
    ShiftComparison out;
    for (std::int64_t n = 0; n < static_cast<std::int64_t>(sums.size()); ++n) {
        std::int64_t idx = n + shift;
        if (!rec.contains(idx)) continue;
        ++out.compared;
        const auto& expected = rec.at(idx);
        const auto& actual = sums[static_cast<std::size_t>(n)];
        if (!out.divergence && expected != actual)
            out.divergence = Divergence{n, expected, actual};
    }
    return out;
}

constexpr std::int64_t kScanLow = -3;
constexpr std::int64_t kScanHigh = 12;
constexpr std::int64_t kMinOverlap = 5;

} // namespace

SequenceRecord parse_bfile(std::string_view text, std::string_view anumber) {
    SequenceRecord rec;
    rec.anumber = std::string(anumber);
    long line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string_view::npos) continue; // blank
        if (line[start] == '#') continue;              // comment

        std::size_t sep = line.find_first_of(" \t", start);
        if (sep == std::string_view::npos)
            throw ParseError("expected 'index value'", line_no);
        std::string_view index_tok = line.substr(start, sep - start);
        std::size_t vstart = line.find_first_not_of(" \t", sep);
        if (vstart == std::string_view::npos)
            throw ParseError("expected 'index value'", line_no);
        std::size_t vend = line.find_first_of(" \t", vstart);
        std::string_view value_tok =
            line.substr(vstart, vend == std::string_view::npos ? line.size() - vstart : vend - vstart);
        if (vend != std::string_view::npos &&
            line.find_first_not_of(" \t", vend) != std::string_view::npos)
            throw ParseError("trailing tokens after value", line_no);

        std::int64_t index = 0;
        auto [ptr, ec] = std::from_chars(index_tok.data(), index_tok.data() + index_tok.size(), index);
        if (ec != std::errc() || ptr != index_tok.data() + index_tok.size())
            throw ParseError("bad index '" + std::string(index_tok) + "'", line_no);

        Integer value;
        try {
            value = Integer(value_tok);
        } catch (const DomainError&) {
            throw ParseError("bad value '" + std::string(value_tok) + "'", line_no);
        }

        if (rec.terms.empty()) {
            rec.offset = index;
        } else if (index != rec.last_index() + 1) {
            throw ParseError("non-consecutive index: expected " +
                                 std::to_string(rec.last_index() + 1) + ", got " +
                                 std::to_string(index),
                             line_no);
        }
        rec.terms.push_back(std::move(value));
    }
    if (rec.terms.empty()) throw ParseError("no terms found");
    return rec;
}

std::string serialize_bfile(const SequenceRecord& rec) {
    std::ostringstream out;
    for (std::size_t i = 0; i < rec.terms.size(); ++i)
        out << (rec.offset + static_cast<std::int64_t>(i)) << ' ' << rec.terms[i] << '\n';
    return out.str();
}

FetchOptions FetchOptions::from_env() { return resolve(FetchOptions{}); }

std::string fetch_bfile(const std::string& anumber, const FetchOptions& opt_in) {
    if (!valid_anumber(anumber))
        throw FetchError("malformed sequence id '" + anumber + "' (want A followed by 6 digits)");
    FetchOptions opt = resolve(opt_in);
    if (opt.offline) {
        auto path = opt.fixture_dir / bfile_name(anumber);
        if (!std::filesystem::exists(path))
            throw FetchError(anumber + ": no fixture at " + path.string() +
                             " (offline mode; run online once or add the fixture)");
        return read_file_capped(path, opt.size_cap, anumber);
    }
    auto cached = opt.cache_dir / bfile_name(anumber);
    if (std::filesystem::exists(cached)) return read_file_capped(cached, opt.size_cap, anumber);
    std::string body = http_get_bfile(anumber, opt);
    write_file_atomically(cached, body);
    return body;
}

const std::vector<TableClaim>& claims_catalog() {
    static const std::vector<TableClaim> table = {
        {{0, 0, 0, 1}, Region::LOWER_STRICT, "A006478", 0},
        {{0, 0, 0, 1}, Region::UPPER_INCL_DIAG, "A001629", 1},
        {{0, 0, 0, 1}, Region::FULL_SQUARE, "A006478", 1},
        {{0, 0, 1, 0}, Region::LOWER_STRICT, "A002940", -2},
        {{0, 0, 1, 0}, Region::UPPER_INCL_DIAG, "A006478", 1},
        {{0, 0, 1, 1}, Region::UPPER_INCL_DIAG, "A122491", 2},
        {{0, 1, 0, 0}, Region::LOWER_STRICT, "A001629", 1},
        {{0, 1, 0, 0}, Region::UPPER_INCL_DIAG, "A006478", 0},
        {{0, 1, 0, 0}, Region::FULL_SQUARE, "A006478", 1},
        {{0, 1, 0, 1}, Region::LOWER_STRICT, "A006478", 1},
        {{0, 1, 0, 1}, Region::UPPER_INCL_DIAG, "A006478", 1},
        {{0, 1, 0, 1}, Region::FULL_SQUARE, "A178523", 1},
        {{0, 1, 1, 0}, Region::LOWER_STRICT, "A014286", 0},
        {{0, 1, 1, 0}, Region::UPPER_INCL_DIAG, "A002940", -1},
        {{0, 1, 1, 1}, Region::UPPER_INCL_DIAG, "A178523", 1},
        {{1, 0, 0, 0}, Region::LOWER_STRICT, "A001629", 0},
        {{1, 0, 0, 0}, Region::UPPER_INCL_DIAG, "A010049", 1},
        {{1, 0, 0, 1}, Region::LOWER_STRICT, "A122491", 1},
        {{1, 0, 0, 1}, Region::UPPER_INCL_DIAG, "A001629", 2},
        {{1, 0, 1, 0}, Region::LOWER_STRICT, "A178523", 0},
        {{1, 0, 1, 1}, Region::UPPER_INCL_DIAG, "A006478", 2},
        {{1, 1, 0, 0}, Region::LOWER_STRICT, "A006478", 1},
        {{1, 1, 0, 0}, Region::UPPER_INCL_DIAG, "A190062", 1},
        {{1, 1, 1, 0}, Region::LOWER_STRICT, "A002940", -1},
        {{1, 1, 1, 1}, Region::UPPER_INCL_DIAG, "A014286", 11},
    };
    return table;
}

MatchReport check_table_row(const SpinSeeds& seeds, Region region, const std::string& anumber,
                            std::int64_t claimed_shift, std::int64_t count,
                            BoundaryConvention conv, const FetchOptions& opt) {
    if (count < kMinOverlap)
        throw DomainError("count must be at least " + std::to_string(kMinOverlap));
    MatchReport report;
    report.row_seeds = seeds;
    report.region = region;
    report.anumber = anumber;
    report.claimed_shift = claimed_shift;
    report.convention = conv;

    SequenceRecord rec = parse_bfile(fetch_bfile(anumber, opt), anumber);
    std::vector<Integer> sums = sum_sequence(seeds, region, count, conv);

    ShiftComparison claimed = compare_at_shift(sums, rec, claimed_shift);
    if (claimed.compared < kMinOverlap)
        throw InsufficientOverlap(anumber + ": only " + std::to_string(claimed.compared) +
                                  " terms overlap at shift " + std::to_string(claimed_shift) +
                                  " (need " + std::to_string(kMinOverlap) + ")");
    if (!claimed.divergence) {
        report.verdict = Verdict::MATCH;
        report.compared_count = claimed.compared;
        return report;
    }
    report.first_divergence = claimed.divergence;

    std::optional<std::int64_t> sole_match;
    std::int64_t sole_compared = 0;
    int matches = 0;
    for (std::int64_t shift = kScanLow; shift <= kScanHigh; ++shift) {
        ShiftComparison probe = compare_at_shift(sums, rec, shift);
        if (probe.compared >= kMinOverlap && !probe.divergence) {
            ++matches;
            sole_match = shift;
            sole_compared = probe.compared;
        }
    }
    if (matches == 1) {
        report.verdict = Verdict::SHIFT_FOUND;
        report.found_shift = sole_match;
        report.compared_count = sole_compared;
    } else {
        report.verdict = Verdict::MISMATCH;
        report.compared_count = claimed.compared;
    }
    return report;
}

std::vector<MatchReport> run_full_table(std::int64_t count, BoundaryConvention conv,
                                        const FetchOptions& opt_in) {
    FetchOptions opt = resolve(opt_in);
    const auto& catalog = claims_catalog();

    // Warm the fetch path (disk cache in online mode), at most 4 in flight.
    std::set<std::string> distinct;
    for (const auto& claim : catalog) distinct.insert(claim.anumber);
    {
        std::counting_semaphore<4> slots(4);
        std::vector<std::jthread> workers;
        workers.reserve(distinct.size());
        for (const auto& anumber : distinct)
            workers.emplace_back([&slots, &opt, anumber] {
                slots.acquire();
                try {
                    fetch_bfile(anumber, opt);
                } catch (...) {
                    // reported per claim below
                }
                slots.release();
            });
    }

    std::vector<MatchReport> reports;
    reports.reserve(catalog.size());
    for (const auto& claim : catalog) {
        SpinSeeds seeds{Integer(claim.seeds[0]), Integer(claim.seeds[1]), Integer(claim.seeds[2]),
                        Integer(claim.seeds[3])};
        try {
            reports.push_back(
                check_table_row(seeds, claim.region, claim.anumber, claim.shift, count, conv, opt));
        } catch (const std::exception& e) {
            MatchReport failed;
            failed.row_seeds = seeds;
            failed.region = claim.region;
            failed.anumber = claim.anumber;
            failed.claimed_shift = claim.shift;
            failed.convention = conv;
            failed.verdict = Verdict::MISMATCH;
            failed.error = e.what();
            reports.push_back(std::move(failed));
        }
    }
    return reports;
}

} // namespace spinfib
