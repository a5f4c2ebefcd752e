#pragma once

// JSON and CSV documents emitted by the library and CLI.
//
// JSON output is canonical: object keys sorted, two-space indent, every
// floating-point value rounded to 12 significant digits, non-finite values
// written as null. Parsing and re-serialising a document yields the same bytes.

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "spinpart/criteria.hpp"
#include "spinpart/momentmat.hpp"
#include "spinpart/states.hpp"
#include "spinpart/wernerscan.hpp"

namespace spinpart {

inline constexpr int kSignificantDigits = 12;

/// Rounds to `digits` significant decimal digits (finite inputs only).
double round_significant(double x, int digits = kSignificantDigits);

std::string report_to_json(const AggregateReport& report,
                           const std::optional<StateSpec>& state = std::nullopt);

/// Word list plus entries as [re, im] pairs, row-major.
std::string moment_matrix_to_json(const MomentMatrix& mm,
                                  const std::optional<StateSpec>& state = std::nullopt);

std::string minors_to_json(const MomentMatrix& mm, std::span<const MinorCertificate> certificates,
                           int max_order, const std::optional<StateSpec>& state = std::nullopt);

std::string cartesian_to_json(const CartesianCheck& check,
                              const std::optional<StateSpec>& state = std::nullopt);

std::string scan_to_json(std::span<const ScanPoint> points, double tol);

/// Header "n,n_a,p_min_class1,p_min_ppt", LF line endings; undetected
/// thresholds are written as empty fields.
std::string scan_to_csv(std::span<const ScanPoint> points);

/// Parses `json_text` and serialises it again in canonical form.
std::string canonical_json(std::string_view json_text);

}  // namespace spinpart
