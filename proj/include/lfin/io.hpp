#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

#include "lfin/abelian.hpp"
#include "lfin/finiteness.hpp"
#include "lfin/towers.hpp"

namespace lfin {

// Text formats. Blank lines and lines starting with '#' are ignored.
//
//   complex v1
//   group cyclic:2
//   prime 2
//   bottom 0
//   ranks 1 1 1
//   boundary 1
//   [1,1]
//   boundary 2
//   [1,1]
//   end
//
// Boundary q has rank(q-1) rows; each row holds rank(q) bracket groups of
// |pi| comma-separated coefficients, in group-table order.
//
//   tower v1
//   group cyclic:2
//   prime 2
//   degrees 0 1
//   levels 2
//   level 0
//   ranks 1 1
//   boundary 1
//   ...
//   end
//   level 1
//   ...
//   end
//   bond 0
//   map 0
//   ...
//   map 1
//   ...
//   end
//
// Bond n maps level n+1 to level n; `map q` has rank_n(q) rows of
// rank_{n+1}(q) groups.

/// A descriptor that rebuilds the same table; falls back to `table:{...}`.
std::string group_descriptor(const GroupTable& g);

std::string write_complex(const ChainComplex& c);
ChainComplex read_complex(std::string_view text);
std::string write_tower(const Tower& t);
Tower read_tower(std::string_view text);

/// JSON-style nested lists, e.g. "[[2,4],[6,8]]".
IntMatrix parse_int_matrix(std::string_view text);

/// "fnv1a64:" followed by 16 hex digits.
std::string digest(std::string_view text);

nlohmann::json to_json(const FlMatrix& m);
FlMatrix fl_matrix_from_json(const nlohmann::json& j, Fl prime);
nlohmann::json to_json(const GroupRingMatrix& m);
GroupRingMatrix ga_matrix_from_json(const nlohmann::json& j, const GroupTable& g);
nlohmann::json to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const nlohmann::json& j);

// Certificates. Every certificate embeds its input text and its digest.

nlohmann::json perfectness_certificate(const ChainComplex& input, const PerfectnessVerdict& v);
nlohmann::json quasi_iso_certificate(const ChainComplex& input, const MinimalModel& model);
nlohmann::json limit_certificate(const Tower& t, const TowerLimit& limit, std::optional<int> homology_bound,
                                 const PerfectnessVerdict& v);
nlohmann::json completion_certificate(const FGAbelian& a, unsigned long l);
nlohmann::json snf_certificate(const IntMatrix& m);

struct VerifyResult {
  bool ok = false;
  std::string reason;
};

/// Re-checks the witnesses in a certificate without repeating any search.
VerifyResult verify_certificate(const nlohmann::json& cert);

}  // namespace lfin
