// Copyright 2026 The osod-eval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "osod/splits/split_spec.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "json.hpp"
#include "osod/error.hpp"
#include "osod/json_util.hpp"
#include "osod/splits/random_splits.hpp"
#include "osod/splits/rng.hpp"

namespace osod {

using nlohmann::json;

namespace {

std::vector<ClassId> Sorted(std::span<const ClassId> ids) {
  std::vector<ClassId> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ClassId> Union(const std::vector<std::vector<ClassId>>& sets) {
  std::vector<ClassId> out;
  for (const auto& s : sets) out.insert(out.end(), s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string DefaultUnionName(std::size_t count) {
  std::string name = "U1";
  for (std::size_t i = 2; i <= count; ++i) name += fmt::format("+{}", i);
  return name;
}

}  // namespace

SplitProtocol ParseProtocol(std::string_view text) {
  if (text == "keep") return SplitProtocol::kKeepUnknownTrainImages;
  if (text == "drop") return SplitProtocol::kDropUnknownTrainImages;
  throw ConfigError(fmt::format("unknown protocol '{}' (keep|drop)", text));
}

std::vector<SplitSpec> MakeSplitSpecs(
    const DatasetView& dataset, std::span<const ClassId> known,
    const std::vector<std::vector<ClassId>>& unknowns, SplitProtocol protocol,
    std::uint64_t seed, const SplitSpecOptions& options) {
  const auto& tax = dataset.taxonomy;
  std::vector<ClassId> known_sorted = Sorted(known);
  std::vector<std::vector<ClassId>> unknown_sorted;
  for (const auto& u : unknowns) unknown_sorted.push_back(Sorted(u));

  // Role per class: -1 none, 0 known, i+1 unknown set i.
  std::vector<int> role(tax.size(), -1);
  auto claim = [&](const std::vector<ClassId>& ids, int r) {
    for (ClassId id : ids) {
      if (!tax.contains(id)) {
        throw ConfigError(
            fmt::format("class id {} is outside the taxonomy", id));
      }
      if (role[id] != -1) {
        throw ConfigError(fmt::format(
            "class '{}' appears in more than one class set", tax.name(id)));
      }
      role[id] = r;
    }
  };
  claim(known_sorted, 0);
  for (std::size_t i = 0; i < unknown_sorted.size(); ++i) {
    claim(unknown_sorted[i], static_cast<int>(i) + 1);
  }
  if (known_sorted.empty()) throw ConfigError("known class set is empty");
  if (unknown_sorted.empty()) throw ConfigError("no unknown class set given");

  std::unordered_map<std::string_view, std::pair<bool, bool>> presence;
  for (const auto& inst : dataset.instances) {
    auto& [has_known, has_unknown] = presence[inst.image_id];
    const int r = tax.contains(inst.class_id) ? role[inst.class_id] : -1;
    if (r == 0) has_known = true;
    if (r > 0) has_unknown = true;
  }

  const bool drop = protocol == SplitProtocol::kDropUnknownTrainImages;
  Xoshiro256 rng(seed);
  std::vector<ImageId> train, val, test;
  for (const auto& img : dataset.images) {
    Subset subset;
    if (img.subset) {
      subset = *img.subset;
    } else {
      const double u = rng.UniformDouble();
      subset = u < options.fractions.train ? Subset::kTrain
               : u < options.fractions.train + options.fractions.val
                   ? Subset::kVal
                   : Subset::kTest;
    }
    auto it = presence.find(img.id);
    const bool has_known = it != presence.end() && it->second.first;
    const bool has_unknown = it != presence.end() && it->second.second;
    switch (subset) {
      case Subset::kTrain:
        if (has_known && !(drop && has_unknown)) train.push_back(img.id);
        break;
      case Subset::kVal:
        if (has_known || has_unknown) val.push_back(img.id);
        break;
      case Subset::kTest:
        if (has_known || has_unknown) test.push_back(img.id);
        break;
    }
  }
  if (train.empty()) {
    throw ConfigError("split leaves no training image with a known instance");
  }

  SplitProvenance provenance;
  provenance.method = options.method;
  provenance.seed = seed;
  provenance.protocol = protocol;
  provenance.ncut_value = options.ncut_value;
  provenance.notes = options.notes;
  provenance.notes.emplace_back(
      "train annotations restricted to known classes; removed objects remain "
      "unlabeled in the images");

  auto make = [&](std::string name, std::vector<ClassId> unknown) {
    SplitSpec spec;
    spec.name = std::move(name);
    spec.known_classes = known_sorted;
    spec.unknown_classes = std::move(unknown);
    spec.train_images = train;
    spec.val_images = val;
    spec.test_images = test;
    spec.provenance = provenance;
    return spec;
  };

  std::vector<SplitSpec> out;
  for (std::size_t i = 0; i < unknown_sorted.size(); ++i) {
    std::string name = i < options.unknown_names.size()
                           ? options.unknown_names[i]
                           : fmt::format("U{}", i + 1);
    out.push_back(make(std::move(name), unknown_sorted[i]));
  }
  if (unknown_sorted.size() >= 2) {
    out.push_back(make(options.union_name.empty()
                           ? DefaultUnionName(unknown_sorted.size())
                           : options.union_name,
                       Union(unknown_sorted)));
  }
  return out;
}

std::vector<SplitSpec> GenerateRandomSplits(const DatasetView& dataset, int k,
                                            std::uint64_t seed,
                                            SplitProtocol protocol,
                                            KnownSelection selection) {
  RandomSplitConfig config;
  config.k = k;
  config.seed = seed;
  config.class_ids.resize(dataset.taxonomy.size());
  for (std::size_t i = 0; i < config.class_ids.size(); ++i) {
    config.class_ids[i] = static_cast<ClassId>(i);
  }
  const auto chunks = RandomKSplits(config);

  std::vector<SplitSpec> out;
  for (int i = 0; i < k; ++i) {
    std::vector<ClassId> others;
    for (int j = 0; j < k; ++j) {
      if (j != i) others.insert(others.end(), chunks[j].begin(), chunks[j].end());
    }
    std::sort(others.begin(), others.end());
    const bool single = selection == KnownSelection::kSingleChunk;
    const std::vector<ClassId>& known = single ? chunks[i] : others;
    const std::vector<ClassId>& unknown = single ? others : chunks[i];

    SplitSpecOptions options;
    options.method = "random";
    options.unknown_names = {fmt::format("split{}", i + 1)};
    options.notes.push_back(fmt::format(
        "chunk {} of {} is the {} set", i + 1, k,
        single ? "known" : "unknown"));
    auto specs = MakeSplitSpecs(dataset, known, {unknown}, protocol, seed,
                                options);
    out.push_back(std::move(specs.front()));
  }
  return out;
}

std::vector<SplitSpec> GenerateNcutSplits(const DatasetView& dataset, int k,
                                          std::uint64_t seed,
                                          SplitProtocol protocol,
                                          const NcutOptions& ncut_options) {
  const auto& tax = dataset.taxonomy;
  std::vector<ClassId> ids(tax.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<ClassId>(i);
  const CoOccurrenceGraph graph = BuildCoOccurrenceGraph(dataset, ids);
  const NcutResult cut = NormalizedCut(graph, k, seed, ncut_options);

  const auto sizes = cut.partition.cluster_sizes();
  const int largest = static_cast<int>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  SplitSpecOptions options;
  options.method = "ncut";
  options.ncut_value = cut.ncut_value;
  options.notes.push_back(fmt::format("cluster sizes {}; cluster {} is known",
                                      sizes, largest));
  if (std::count(sizes.begin(), sizes.end(), sizes[largest]) > 1) {
    options.notes.push_back(fmt::format(
        "largest-cluster tie at size {} broken by lowest cluster index",
        sizes[largest]));
  }
  if (!cut.isolated_vertices.empty()) {
    std::vector<std::string> names;
    for (int v : cut.isolated_vertices) names.push_back(tax.name(ids[v]));
    options.notes.push_back(fmt::format(
        "classes without co-occurrence assigned to the smallest cluster: {}",
        fmt::join(names, ", ")));
  }

  std::vector<ClassId> known;
  std::vector<std::vector<ClassId>> unknowns;
  for (int c = 0; c < k; ++c) {
    std::vector<ClassId> members;
    for (int v : cut.partition.members(c)) members.push_back(ids[v]);
    if (c == largest) {
      known = std::move(members);
    } else {
      unknowns.push_back(std::move(members));
    }
  }
  return MakeSplitSpecs(dataset, known, unknowns, protocol, seed, options);
}

std::string SerializeSplitSpec(const SplitSpec& spec,
                               const ClassTaxonomy& taxonomy) {
  auto names = [&](const std::vector<ClassId>& ids) {
    json arr = json::array();
    for (ClassId id : ids) arr.push_back(taxonomy.name(id));
    return arr;
  };
  json prov = {{"method", spec.provenance.method},
               {"seed", spec.provenance.seed},
               {"protocol", ToString(spec.provenance.protocol)}};
  if (spec.provenance.ncut_value) prov["ncut_value"] = *spec.provenance.ncut_value;
  prov["notes"] = spec.provenance.notes;

  json doc = {{"name", spec.name},
              {"known", names(spec.known_classes)},
              {"unknown", names(spec.unknown_classes)},
              {"train", spec.train_images},
              {"val", spec.val_images},
              {"test", spec.test_images},
              {"provenance", std::move(prov)}};
  return doc.dump(2) + "\n";
}

SplitSpec ParseSplitSpec(std::string_view source,
                         const ClassTaxonomy& taxonomy) {
  const json doc = json_util::Parse(source);
  if (!doc.is_object()) throw SchemaError("split document must be an object");

  auto class_set = [&](const char* key) {
    const json& arr = json_util::Require(doc, key, "split");
    if (!arr.is_array()) throw SchemaError(fmt::format("split.{} must be an array", key));
    std::vector<ClassId> ids;
    for (const auto& v : arr) {
      if (!v.is_string()) {
        throw SchemaError(fmt::format("split.{} must list class names", key));
      }
      auto id = taxonomy.find(v.get<std::string>());
      if (!id) {
        throw SchemaError(fmt::format("split.{}: unknown class name '{}'", key,
                                      v.get<std::string>()));
      }
      ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
      throw SchemaError(fmt::format("split.{} repeats a class", key));
    }
    return ids;
  };
  auto image_list = [&](const char* key) {
    std::vector<ImageId> ids;
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return ids;
    if (!it->is_array()) throw SchemaError(fmt::format("split.{} must be an array", key));
    for (const auto& v : *it) {
      if (v.is_string()) {
        ids.push_back(v.get<std::string>());
      } else if (v.is_number_integer()) {
        ids.push_back(v.dump());
      } else {
        throw SchemaError(fmt::format("split.{} must list image ids", key));
      }
    }
    return ids;
  };

  SplitSpec spec;
  spec.name = json_util::OptionalString(doc, "name", "split").value_or("");
  spec.known_classes = class_set("known");
  spec.unknown_classes = class_set("unknown");
  spec.train_images = image_list("train");
  spec.val_images = image_list("val");
  spec.test_images = image_list("test");
  auto prov_it = doc.find("provenance");
  if (prov_it != doc.end() && prov_it->is_object()) {
    const json& prov = *prov_it;
    spec.provenance.method =
        json_util::OptionalString(prov, "method", "split.provenance")
            .value_or("");
    auto seed = prov.find("seed");
    if (seed != prov.end() && seed->is_number_unsigned()) {
      spec.provenance.seed = seed->get<std::uint64_t>();
    }
    if (auto p = json_util::OptionalString(prov, "protocol", "split.provenance")) {
      spec.provenance.protocol = ParseProtocol(*p);
    }
    spec.provenance.ncut_value =
        json_util::OptionalNumber(prov, "ncut_value", "split.provenance");
    auto notes = prov.find("notes");
    if (notes != prov.end() && notes->is_array()) {
      for (const auto& n : *notes) {
        if (n.is_string()) spec.provenance.notes.push_back(n.get<std::string>());
      }
    }
  }
  return spec;
}

}  // namespace osod
