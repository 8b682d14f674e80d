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

#ifndef HFRET_SERIALIZE_HPP
#define HFRET_SERIALIZE_HPP

#include <json.hpp>

#include "hfret/distributions.hpp"

namespace hfret {

/// Parameter vectors serialize to {family, lambda?, alpha?, beta,
/// delta|sigma, mu, nu?} with field presence determined by the family.
nlohmann::json params_to_json(const FamilyParams& p);
FamilyParams params_from_json(const nlohmann::json& j);

} // namespace hfret

#endif // HFRET_SERIALIZE_HPP
