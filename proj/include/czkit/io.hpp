#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "czkit/bounds.hpp"
#include "czkit/function.hpp"
#include "czkit/report.hpp"
#include "czkit/space.hpp"

namespace czkit {

// Space file schema:
//   {"n": int,
//    "metric": {"type":"matrix","data":[[...]]}
//            | {"type":"euclidean","coords":[[...]],"p":real}
//            | {"type":"graph","edges":[[i,j,w],...]}
//            | {"type":"snowflake","inner":<metric>,"alpha":real},
//    "weights": [...]}        (unit weights when omitted)
MetricMeasureSpace space_from_json(const nlohmann::json& j);
MetricMeasureSpace load_space(const std::string& path);

// Function files: JSON {"values":[[...]], "vec_norm": q} or CSV with one row
// per point and one column per coordinate (selected by extension).
FunctionOnSpace function_from_json(const nlohmann::json& j);
FunctionOnSpace load_function(const std::string& path);
void save_function_csv(const std::string& path, const FunctionOnSpace& f);

std::vector<double> load_kernel_csv(const std::string& path, int n);
void save_kernel_csv(const std::string& path, const std::vector<double>& K, int n);

// Tensor file: {"axes":[...], "weights":[[...],...], "exponents":[...],
//               "values":[flat row-major, last axis = X]}
MixedNormTensor tensor_from_json(const nlohmann::json& j);
MixedNormTensor load_tensor(const std::string& path);

nlohmann::json report_to_json(const BoundReport& r);

void save_profile_csv(const std::string& path, const DoublingProfile& p);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);
void save_text_file(const std::string& path, const std::string& text);

// shortest round-trip formatting used by every CSV writer
std::string format_double(double v);

}  // namespace czkit
