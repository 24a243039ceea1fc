#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "stablab/measures.hpp"
#include "stablab/sac.hpp"
#include "stablab/weights.hpp"

namespace stablab {

// Member mini-language (case-sensitive):
//   stable:alpha=A,c=C
//   pareto:alpha=A,c=C
//   noise:alpha=A,c=C,eps=E
//   mix:(w1)spec1|(w2)spec2|...     (components may not be mixtures)
SacMember parse_member(std::string_view text);

// Member specs plus twopoint:v=V, uniform:b=B, gauss:var=S.
Measure parse_measure(std::string_view text);

// constant | polynomial:gamma=G | geometric:r=R | explicit:a1,a2,...
WeightScheme parse_weights(std::string_view text);

// "start:stop:count", count >= 2.
std::vector<double> parse_grid(std::string_view text);

// "n1,n2,..." strictly increasing positive counts.
std::vector<std::size_t> parse_count_list(std::string_view text);

double parse_real(std::string_view text, std::string_view field);

struct ModelDocument {
  std::optional<double> alpha;
  std::optional<double> c;
  MeasureModel model;
  nlohmann::ordered_json source;  // normalized echo of the document
};

// {"alpha": A, "c": C, "atoms": [{"prob": p, "spec": "..."}, ...]}.
// alpha and c are optional; when present every S(alpha, c) atom must match.
ModelDocument model_from_json(const nlohmann::json& doc);
ModelDocument load_model(const std::filesystem::path& path);

}  // namespace stablab
