#pragma once

#include "conefan/coregular.hpp"
#include "conefan/germ.hpp"
#include "conefan/orthoset.hpp"
#include "conefan/padic.hpp"

#include <json.hpp>

#include <string>

namespace conefan {

using Json = nlohmann::ordered_json;

// Rationals serialize as "p/q" strings, matrices as row arrays.
Json rat_to_json(const Rat& x);
Rat rat_from_json(const Json& j);
Json vec_to_json(const QVec& v);
QVec vec_from_json(const Json& j);
Json mat_to_json(const QMat& m);
QMat mat_from_json(const Json& j);

RootDatumSpec datum_spec_from_json(const Json& j);

// Stable external face name: one character per root, '+', '-' or '0'.
std::string face_name(const Fan& fan, FaceId f);
FaceId face_by_name(const Fan& fan, const std::string& name);

Json orthoset_to_json(const Fan& fan, const OrthogonalSet& y);
OrthogonalSet orthoset_from_json(const Fan& fan, const Json& j);

Json fg_convex_to_json(const FGConvexSet& s);

SymmetricPairDatum pair_from_json(const Json& j);

Json polyexp_to_json(const PolyExpFunction& f);

// Named corpus, loaded from a directory of JSON files.
struct Corpus {
  struct FanEntry {
    std::string name;
    OwnedFan fan;
  };
  struct GermEntry {
    std::string name;
    std::string datum;  // fan name
    GermFanConfig cfg;
    GermFan gf;
    QVec epsilon;  // may be empty
  };
  struct ConvexEntry {
    std::string name;
    FGConvexSet set;
    std::vector<std::pair<std::vector<QVec>, QVec>> projections;  // (b basis, xi)
  };
  struct PairEntry {
    SymmetricPairDatum pair;
    bool expect_coregular = false;
  };
  struct PadicEntry {
    std::string name;
    std::string germ;  // germ entry name
    PadicWeightScenario scenario;
    OrthogonalSet X;
    QVec epsilon;
    long grid_lo = 0, grid_hi = 0;
  };

  std::vector<FanEntry> fans;
  std::vector<GermEntry> germs;
  std::vector<ConvexEntry> convexes;
  std::vector<PairEntry> pairs;
  std::vector<PadicEntry> padics;

  const FanEntry& fan(const std::string& name) const;
  const GermEntry& germ(const std::string& name) const;
};

Corpus load_corpus(const std::string& dir);

}  // namespace conefan
