#pragma once

#include <string>

#include <json.hpp>

#include "mlfc/bounds.hpp"
#include "mlfc/fpde.hpp"
#include "mlfc/oscint.hpp"
#include "mlfc/phases.hpp"

namespace mlfc::cli {

using nlohmann::json;

// Non-finite numbers become the strings "inf", "-inf" or "nan".
json number(double v);

json to_json(const IntegralResult& r);
json to_json(const PhaseCert& c);
json to_json(const DecayRate& r);
json to_json(const DecayFit& f);
json to_json(const BoundReport& r);
json to_json(const FieldSnapshot& s);
json to_json(const DispersiveReport& r);

// CSV tables; every number in shortest round-trip form.
std::string decay_csv(const BoundReport& r);        // lambda,abs_I,ratio
std::string dispersive_csv(const DispersiveReport& r);  // t,sup_norm,envelope,ratio
std::string field_csv(const FieldSnapshot& s);      // x,re,im,abs

// IoError if the file cannot be written.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mlfc::cli
