#pragma once

// Stable JSON form of every report and trace, and independent
// re-verification of serialized construction traces. Field names are
// documented in docs/trace_schema.md.

#include <string>
#include <vector>

#include <json.hpp>

#include "splitlab/constructions.hpp"
#include "splitlab/density.hpp"
#include "splitlab/northcott.hpp"

namespace splitlab {

inline constexpr int kSchemaVersion = 1;

/// Integers fitting 64 bits are written as JSON numbers, those up to this
/// many bits as decimal strings under `key`, larger ones as hexadecimal
/// strings under `key + "_hex"`.
inline constexpr std::size_t kDecimalBitLimit = 4096;

void put_bigint(nlohmann::json& j, const std::string& key, const BigInt& v);
BigInt get_bigint(const nlohmann::json& j, const std::string& key);

nlohmann::json to_json(const CertifiedInequality& c);
nlohmann::json to_json(const SfrakReport& r);
nlohmann::json to_json(const ConstructionTrace& t);
nlohmann::json to_json(const SplittingSpec& s);
nlohmann::json to_json(const PrescribedQuadratic& q, const SplittingSpec& s);
nlohmann::json to_json(const AdjoinIBound& b);
nlohmann::json to_json(const NorthcottBounds& b, bool list_primes);
nlohmann::json to_json(const PrimeWindow& w);
nlohmann::json to_json(const DensityReport& r);
nlohmann::json to_json(const InertCompanion& c);

SplittingSpec spec_from_json(const nlohmann::json& j);

/// Re-checks every certificate of a serialized construction (prescribed
/// quadratic or either tower) from its raw data, without trusting recorded
/// outcomes. Returns one line per failure.
std::vector<std::string> verify_construction(const nlohmann::json& j);

}  // namespace splitlab
