#include "asdim/json_io.hpp"

#include <fstream>

namespace asdim {

namespace {

// every malformed-input path funnels through here so callers see one error
[[noreturn]] void bad_input(const std::string& what) { throw DataError("malformed input: " + what); }

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    bad_input(e.what());
  }
}

Json meta_to_json(const SpaceMeta& meta) {
  if (meta.kind.empty()) return nullptr;
  Json j;
  j["kind"] = meta.kind;
  j["p1"] = meta.p1;
  j["p2"] = meta.p2;
  j["variant"] = meta.variant;
  if (meta.seed)
    j["seed"] = *meta.seed;
  else
    j["seed"] = nullptr;
  return j;
}

SpaceMeta meta_from_json(const Json& j) {
  SpaceMeta meta;
  if (j.is_null()) return meta;
  meta.kind = j.at("kind").get<std::string>();
  meta.p1 = j.at("p1").get<long long>();
  meta.p2 = j.at("p2").get<long long>();
  meta.variant = j.at("variant").get<std::string>();
  if (!j.at("seed").is_null()) meta.seed = j.at("seed").get<unsigned long long>();
  return meta;
}

std::vector<std::vector<PointSet>> families_from_json(const Json& j) {
  std::vector<std::vector<PointSet>> families;
  for (const auto& fam : j) {
    std::vector<PointSet> members;
    for (const auto& m : fam) {
      std::vector<Point> pts;
      for (const auto& p : m) pts.push_back(p.get<Point>());
      members.push_back(PointSet(std::move(pts)));
    }
    families.push_back(std::move(members));
  }
  return families;
}

Json families_to_json(const std::vector<std::vector<PointSet>>& families) {
  Json out = Json::array();
  for (const auto& fam : families) {
    Json jf = Json::array();
    for (const auto& m : fam) {
      Json jm = Json::array();
      for (Point p : m.items()) jm.push_back(p);
      jf.push_back(std::move(jm));
    }
    out.push_back(std::move(jf));
  }
  return out;
}

void require_point_range(const std::vector<std::vector<PointSet>>& families, int universe) {
  for (const auto& fam : families)
    for (const auto& m : fam)
      for (Point p : m.items())
        if (p < 0 || p >= universe) bad_input("cover point out of range");
}

}  // namespace

Json space_to_json(const FiniteMetricSpace& X) {
  Json j;
  Json names = Json::array();
  for (Point p = 0; p < X.size(); ++p) names.push_back(X.name(p));
  j["points"] = std::move(names);
  j["dist"] = X.lower_triangular();
  if (X.base_point())
    j["base_point"] = *X.base_point();
  else
    j["base_point"] = nullptr;
  j["meta"] = meta_to_json(X.meta);
  return j;
}

SpaceRef space_from_json(const Json& j) {
  return guarded([&] {
    std::vector<std::string> names;
    for (const auto& n : j.at("points")) names.push_back(n.get<std::string>());
    std::vector<Dist> tri;
    for (const auto& d : j.at("dist")) tri.push_back(d.get<Dist>());
    std::optional<Point> base;
    if (!j.at("base_point").is_null()) base = j.at("base_point").get<Point>();
    std::shared_ptr<FiniteMetricSpace> X;
    try {
      X = std::make_shared<FiniteMetricSpace>(
          FiniteMetricSpace::from_lower_triangular(std::move(names), tri, base));
    } catch (const ParamError& e) {
      bad_input(e.what());
    }
    if (j.contains("meta")) X->meta = meta_from_json(j.at("meta"));
    return SpaceRef(X);
  });
}

Json cover_to_json(const Cover& c) {
  Json j;
  j["space"] = c.space_id;
  j["split"] = false;
  j["families"] = families_to_json({c.members});
  return j;
}

Json split_cover_to_json(const SplitCover& sc) {
  Json j;
  j["space"] = sc.space_id;
  j["split"] = true;
  j["families"] = families_to_json(sc.families);
  return j;
}

Cover cover_from_json(const Json& j) {
  return guarded([&] {
    Cover c;
    c.space_id = j.at("space").get<std::string>();
    for (auto& fam : families_from_json(j.at("families")))
      c.members.insert(c.members.end(), fam.begin(), fam.end());
    return c;
  });
}

SplitCover split_cover_from_json(const Json& j) {
  return guarded([&] {
    SplitCover sc;
    sc.space_id = j.at("space").get<std::string>();
    if (!j.at("split").get<bool>()) bad_input("expected a split cover");
    sc.families = families_from_json(j.at("families"));
    return sc;
  });
}

Json sequence_to_json(const GuidedSequence& seq) {
  Json j;
  j["schema_version"] = 1;
  j["mode"] = schedule_name(seq.mode);
  j["space"] = space_to_json(*seq.space);
  j["respects_base_point"] = seq.respects_base_point;
  j["n_raised"] = seq.n_raised;
  Json levels = Json::array();
  for (const auto& lv : seq.levels) {
    Json jl;
    jl["cover"] = split_cover_to_json(lv.cover);
    jl["R"] = lv.guide.R;
    jl["r"] = lv.guide.r;
    levels.push_back(std::move(jl));
  }
  j["levels"] = std::move(levels);
  return j;
}

GuidedSequence sequence_from_json(const Json& j) {
  return guarded([&] {
    GuidedSequence seq;
    seq.space = space_from_json(j.at("space"));
    auto mode = schedule_from_name(j.at("mode").get<std::string>());
    if (!mode) bad_input("unknown schedule mode");
    seq.mode = *mode;
    seq.respects_base_point = j.at("respects_base_point").get<bool>();
    seq.n_raised = j.at("n_raised").get<bool>();
    for (const auto& jl : j.at("levels")) {
      SequenceLevel lv;
      lv.cover = split_cover_from_json(jl.at("cover"));
      require_point_range(lv.cover.families, seq.space->size());
      lv.guide.R = jl.at("R").get<Dist>();
      lv.guide.r = jl.at("r").get<Dist>();
      seq.levels.push_back(std::move(lv));
    }
    return seq;
  });
}

Json map_to_json(const CoarseMap& f) {
  Json j;
  j["schema_version"] = 1;
  j["source"] = f.source ? f.source->meta.id() : "";
  j["target"] = f.target ? f.target->meta.id() : "";
  j["assignment"] = f.assignment;
  return j;
}

CoarseMap map_from_json(const Json& j, SpaceRef source, SpaceRef target) {
  return guarded([&] {
    if (!source || !target) throw ParamError("map needs its spaces");
    const std::string sid = j.at("source").get<std::string>();
    const std::string tid = j.at("target").get<std::string>();
    if (!sid.empty() && !source->meta.id().empty() && sid != source->meta.id())
      bad_input("map source id does not match the space");
    if (!tid.empty() && !target->meta.id().empty() && tid != target->meta.id())
      bad_input("map target id does not match the space");
    CoarseMap f{source, target, {}};
    for (const auto& p : j.at("assignment")) f.assignment.push_back(p.get<Point>());
    if (f.assignment.size() != static_cast<std::size_t>(source->size()))
      bad_input("assignment length does not match the source");
    for (Point y : f.assignment)
      if (y < 0 || y >= target->size()) bad_input("assignment value out of range");
    return f;
  });
}

Json report_to_json(const ValidationReport& rep) {
  Json j;
  j["schema_version"] = 1;
  j["ok"] = rep.ok();
  Json checks = Json::array();
  for (const auto& c : rep.checks()) {
    Json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    jc["witness"] = c.witness;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  return j;
}

Json factorization_result_to_json(const FactorizationResult& res, const CoarseMap& f) {
  Json j;
  j["schema_version"] = 1;
  j["Z"] = space_to_json(*res.Z);
  Json zp = Json::array();
  for (Point p : res.Z_points.items()) zp.push_back(p);
  j["Z_points"] = std::move(zp);
  j["Zprime"] = space_to_json(*res.Zprime);
  Json pairs = Json::array();
  for (const auto& [y, z] : res.Zprime_pairs) pairs.push_back(Json::array({y, z}));
  j["Zprime_pairs"] = std::move(pairs);
  j["f"] = map_to_json(f);
  j["g"] = map_to_json(res.g);
  j["h"] = map_to_json(res.h);
  j["gprime"] = map_to_json(res.gprime);
  j["hprime"] = map_to_json(res.hprime);
  j["pi"] = map_to_json(res.pi);
  return j;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw DataError("cannot parse " + path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << canonical_dump(j);
  if (!out) throw DataError("cannot write " + path);
}

}  // namespace asdim
