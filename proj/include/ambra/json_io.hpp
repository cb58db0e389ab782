#pragma once

#include "json.hpp"

#include "ambra/synth.hpp"

namespace ambra {

using Json = nlohmann::json;

// Field descriptors: {"type":"rational"} or
// {"type":"number_field","min_poly":["c0",...,"1"]}.
Json field_to_json(const FieldPtr& f);
FieldPtr field_from_json(const Json& j);

// Elements: arrays of rational strings (power-basis coordinates); a bare
// string is accepted on input for degree-1 fields.
Json element_to_json(const FieldElement& x);
FieldElement element_from_json(const Json& j, const FieldPtr& f);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const FieldPtr& f);

Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j, const FieldPtr& f);

Json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const Json& j, const FieldPtr& f);

Json linrep_to_json(const LinRep& rep);
LinRep linrep_from_json(const Json& j);

Json group_to_json(const GroupInput& g);
GroupInput group_from_json(const Json& j);

Json embedding_to_json(const Embedding& e);
Embedding embedding_from_json(const Json& j);

Json certificate_to_json(const EpimonomialCertificate& c);
EpimonomialCertificate certificate_from_json(const Json& j, const FieldPtr& f);

Json refutation_to_json(const RefutationWitness& w);
RefutationWitness refutation_from_json(const Json& j, const FieldPtr& f);

Json spectrum_certificate_to_json(const SpectrumCertificate& c);
SpectrumCertificate spectrum_certificate_from_json(const Json& j, const FieldPtr& base);

Json spectrum_refutation_to_json(const SpectrumRefutation& r);
SpectrumRefutation spectrum_refutation_from_json(const Json& j, const FieldPtr& f);

Json classification_to_json(const SeriesClassification& c);
SeriesClassification classification_from_json(const Json& j);

Json structural_report_to_json(const StructuralReport& r);

Json spectrum_report_to_json(const SpectrumReport& r);
Json steady_analysis_to_json(const SteadyAnalysis& a);

// File helpers (Errors: ParseError).
Json load_json_file(const std::string& path);

}  // namespace ambra
