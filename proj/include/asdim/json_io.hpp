#pragma once

// JSON serialization for every artifact the CLI reads or writes. Dumps are
// canonical (sorted keys, two-space indent, trailing newline) so identical
// inputs produce byte-identical files.

#include <string>

#include <json.hpp>

#include "asdim/coarse.hpp"
#include "asdim/cover.hpp"
#include "asdim/factorize.hpp"
#include "asdim/report.hpp"
#include "asdim/sequence.hpp"
#include "asdim/space.hpp"

namespace asdim {

using Json = nlohmann::json;  // map-backed, keys come out sorted

// space: { "points": [names], "dist": lower-triangular row-major,
//          "base_point": index|null, "meta": {...}|null }
Json space_to_json(const FiniteMetricSpace& X);
SpaceRef space_from_json(const Json& j);

// cover: { "space": id, "split": bool, "families": [[[point]]] }
Json cover_to_json(const Cover& c);
Json split_cover_to_json(const SplitCover& sc);
Cover cover_from_json(const Json& j);
SplitCover split_cover_from_json(const Json& j);

// sequence: { "schema_version": 1, "mode": ..., "space": {...},
//             "respects_base_point": bool, "n_raised": bool,
//             "levels": [ { "cover": {...}, "R": int, "r": int } ] }
Json sequence_to_json(const GuidedSequence& seq);
GuidedSequence sequence_from_json(const Json& j);

// map: { "schema_version": 1, "source": id, "target": id,
//        "assignment": [point] }
Json map_to_json(const CoarseMap& f);
CoarseMap map_from_json(const Json& j, SpaceRef source, SpaceRef target);

// report: { "schema_version": 1, "ok": bool, "checks": [...] }
Json report_to_json(const ValidationReport& rep);

Json factorization_result_to_json(const FactorizationResult& res, const CoarseMap& f);

std::string canonical_dump(const Json& j);

// parse errors and unreadable paths surface as data errors
Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace asdim
