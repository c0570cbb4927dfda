#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "besovlab/besov.hpp"
#include "besovlab/cwt.hpp"
#include "besovlab/distributions.hpp"
#include "besovlab/lab.hpp"
#include "besovlab/sampler.hpp"
#include "besovlab/schedules.hpp"
#include "besovlab/theory.hpp"
#include "besovlab/tree.hpp"

namespace besovlab {

using Json = nlohmann::json;

// Malformed input document; path is a JSON pointer to the offending field.
struct ConfigError : std::invalid_argument {
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), path(std::move(field)) {}
  std::string path;
};

// %.17g, with "inf", "-inf" and "nan" spelled out.
std::string format_double(double x);

// Field access with the path carried into every error.
const Json& require(const Json& j, const std::string& key, const std::string& path);
double number_at(const Json& j, const std::string& key, const std::string& path);
double number_or(const Json& j, const std::string& key, const std::string& path, double fallback);
long long integer_at(const Json& j, const std::string& key, const std::string& path);
long long integer_or(const Json& j, const std::string& key, const std::string& path,
                     long long fallback);
std::string string_or(const Json& j, const std::string& key, const std::string& path,
                      const std::string& fallback);

// {"kind": "gaussian", "sigma": 1} | laplace/lambda | student_t/nu | cauchy |
// power_exponential/m,lambda
SlabDistribution slab_from_json(const Json& j, const std::string& path = "/slab");
Json slab_to_json(const SlabDistribution& d);

// {"c", "e", "g"} with c defaulting to 1 and g to 0
LevelSchedule schedule_from_json(const Json& j, const std::string& path);
Json schedule_to_json(const LevelSchedule& s);

// number >= 1 or the string "inf"
ExtendedIndex index_from_json(const Json& j, const std::string& path);
Json index_to_json(const ExtendedIndex& x);

BesovParams besov_from_json(const Json& j, const std::string& path = "/besov");
Json besov_to_json(const BesovParams& bp);

// {"tau", "pi", "slab", "mode": {"kind": "infinite", "J"} | {"kind": "regression", "n"}}
PriorSpec prior_from_json(const Json& j, const std::string& path = "/prior");
Json prior_to_json(const PriorSpec& spec);

LevelRange levels_from_json(const Json& j, const std::string& path, LevelRange fallback);
Json levels_to_json(const LevelRange& r);

// {j0, scaling[], levels: [{j, entries: [[k, w], ...]}]}
Json tree_to_json(const CoefficientTree& t);
CoefficientTree tree_from_json(const Json& j, const std::string& path = "");
// j,k,w rows for the detail levels
void write_tree_csv(std::ostream& os, const CoefficientTree& t);
// j,a_j rows
void write_level_terms_csv(std::ostream& os, const CoefficientTree& t, const BesovParams& bp);

Json verdict_to_json(const Verdict& v);
Json report_to_json(const ExperimentReport& r);
// j,reps,mean,stderr,median,iqr,expected_count,reference rows
void write_report_csv(std::ostream& os, const ExperimentReport& r);

CwtSpec cwt_spec_from_json(const Json& j, const std::string& path = "/cwt");
Json cwt_spec_to_json(const CwtSpec& spec);
void write_atoms_csv(std::ostream& os, const std::vector<PoissonAtom>& atoms);
Json kernel_report_to_json(const KernelBoundReport& r);
Json moment_report_to_json(const MomentReport& r);

}  // namespace besovlab
