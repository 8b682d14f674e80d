// Copyright 2026 the hfret authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hfret/serialize.hpp"

namespace hfret {

using nlohmann::json;

json params_to_json(const FamilyParams& p) {
  json j;
  j["family"] = family_name(family_of(p));
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, StableParams>) {
          j["alpha"] = v.alpha;
          j["beta"] = v.beta;
          j["delta"] = v.delta;
          j["mu"] = v.mu;
        } else if constexpr (std::is_same_v<T, GHParams>) {
          j["lambda"] = v.lambda;
          j["alpha"] = v.alpha;
          j["beta"] = v.beta;
          j["delta"] = v.delta;
          j["mu"] = v.mu;
        } else if constexpr (std::is_same_v<T, NIGParams>) {
          j["alpha"] = v.alpha;
          j["beta"] = v.beta;
          j["delta"] = v.delta;
          j["mu"] = v.mu;
        } else if constexpr (std::is_same_v<T, SkewTParams>) {
          j["nu"] = v.nu;
          j["beta"] = v.beta;
          j["delta"] = v.delta;
          j["mu"] = v.mu;
        } else {
          j["mu"] = v.mu;
          j["sigma"] = v.sigma;
        }
      },
      p);
  return j;
}

FamilyParams params_from_json(const json& j) {
  const Family fam = family_from_name(j.at("family").get<std::string>());
  switch (fam) {
    case Family::kStable:
      return StableParams{j.at("alpha"), j.at("beta"), j.at("delta"),
                          j.at("mu")};
    case Family::kGH:
      return GHParams{j.at("lambda"), j.at("alpha"), j.at("beta"),
                      j.at("delta"), j.at("mu")};
    case Family::kNIG:
      return NIGParams{j.at("alpha"), j.at("beta"), j.at("delta"),
                       j.at("mu")};
    case Family::kSkewT:
      return SkewTParams{j.at("nu"), j.at("beta"), j.at("delta"), j.at("mu")};
    case Family::kGaussian:
      return GaussianParams{j.at("mu"), j.at("sigma")};
  }
  throw std::logic_error("params_from_json: bad family");
}

} // namespace hfret
