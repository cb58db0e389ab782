#include "ambra/json_io.hpp"

#include <fstream>

#include "ambra/error.hpp"
#include "ambra/factor.hpp"

namespace ambra {

Json field_to_json(const FieldPtr& f) {
  if (f->is_rational() && f->min_poly()[0] == 0) return Json{{"type", "rational"}};
  Json mp = Json::array();
  for (const auto& c : f->min_poly()) mp.push_back(rational_to_string(c));
  return Json{{"type", "number_field"}, {"min_poly", mp}};
}

FieldPtr field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type")) raise(ErrorKind::ParseError, "bad field descriptor");
  std::string type = j.at("type").get<std::string>();
  if (type == "rational") return NumberField::rationals();
  if (type != "number_field") raise(ErrorKind::ParseError, "unknown field type '" + type + "'");
  if (!j.contains("min_poly") || !j.at("min_poly").is_array())
    raise(ErrorKind::ParseError, "number_field needs min_poly");
  std::vector<Rational> mp;
  for (const auto& c : j.at("min_poly")) mp.push_back(rational_from_string(c.get<std::string>()));
  Polynomial p = Polynomial::from_rationals(NumberField::rationals(), mp);
  return nf_create(p);  // validates monic irreducible
}

Json element_to_json(const FieldElement& x) {
  Json out = Json::array();
  for (const auto& c : x.coords()) out.push_back(rational_to_string(c));
  return out;
}

FieldElement element_from_json(const Json& j, const FieldPtr& f) {
  if (j.is_string())
    return FieldElement::from_rational(f, rational_from_string(j.get<std::string>()));
  if (j.is_number_integer())
    return FieldElement::from_rational(f, Rational(static_cast<long>(j.get<long>())));
  if (!j.is_array()) raise(ErrorKind::ParseError, "element must be an array of rational strings");
  std::vector<Rational> coords;
  for (const auto& c : j) {
    if (c.is_number_integer())
      coords.push_back(Rational(static_cast<long>(c.get<long>())));
    else
      coords.push_back(rational_from_string(c.get<std::string>()));
  }
  if (static_cast<int>(coords.size()) != f->degree())
    raise(ErrorKind::ParseError, "element coordinate count does not match the field degree");
  return FieldElement(f, std::move(coords));
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(element_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const FieldPtr& f) {
  if (!j.is_array()) raise(ErrorKind::ParseError, "matrix must be an array of rows");
  int rows = static_cast<int>(j.size());
  int cols = rows == 0 ? 0 : static_cast<int>(j.at(0).size());
  Matrix m(f, rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j.at(i).size()) != cols) raise(ErrorKind::ParseError, "ragged matrix");
    for (int c = 0; c < cols; ++c) m.at(i, c) = element_from_json(j.at(i).at(c), f);
  }
  return m;
}

Json subspace_to_json(const Subspace& s) {
  return Json{{"ambient_dim", s.ambient_dim()}, {"basis", matrix_to_json(s.basis())}};
}

Subspace subspace_from_json(const Json& j, const FieldPtr& f) {
  int ambient = j.at("ambient_dim").get<int>();
  Json basis = j.at("basis");
  if (basis.empty()) return Subspace::zero(f, ambient);
  Matrix rows = matrix_from_json(basis, f);
  if (rows.cols() != ambient) raise(ErrorKind::ParseError, "subspace basis width mismatch");
  return Subspace::from_spanning_rows(rows);
}

Json decomposition_to_json(const Decomposition& d) {
  Json pieces = Json::array();
  for (const auto& p : d.pieces) pieces.push_back(subspace_to_json(p));
  return Json{{"pieces", pieces}, {"partial", d.partial}};
}

Decomposition decomposition_from_json(const Json& j, const FieldPtr& f) {
  Decomposition d;
  for (const auto& p : j.at("pieces")) d.pieces.push_back(subspace_from_json(p, f));
  d.partial = j.at("partial").get<bool>();
  return d;
}

Json linrep_to_json(const LinRep& rep) {
  Json init = Json::array(), fin = Json::array();
  for (int i = 0; i < rep.dim; ++i) init.push_back(element_to_json(rep.initial.at(0, i)));
  for (int i = 0; i < rep.dim; ++i) fin.push_back(element_to_json(rep.final.at(i, 0)));
  Json trans = Json::object();
  for (const auto& x : rep.alphabet) trans[x] = matrix_to_json(rep.transition(x));
  return Json{{"field", field_to_json(rep.field)}, {"alphabet", rep.alphabet},
              {"dim", rep.dim},  {"initial", init},
              {"final", fin},    {"transitions", trans}};
}

LinRep linrep_from_json(const Json& j) {
  LinRep rep;
  try {
    rep.field = field_from_json(j.at("field"));
    rep.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    rep.dim = j.at("dim").get<int>();
    if (rep.dim < 0) raise(ErrorKind::ParseError, "negative dimension");
    Json init = j.at("initial"), fin = j.at("final");
    if (static_cast<int>(init.size()) != rep.dim || static_cast<int>(fin.size()) != rep.dim)
      raise(ErrorKind::ParseError, "vector length does not match dim");
    rep.initial = Matrix(rep.field, 1, rep.dim);
    rep.final = Matrix(rep.field, rep.dim, 1);
    for (int i = 0; i < rep.dim; ++i) {
      rep.initial.at(0, i) = element_from_json(init.at(i), rep.field);
      rep.final.at(i, 0) = element_from_json(fin.at(i), rep.field);
    }
    for (const auto& x : rep.alphabet) {
      if (!j.at("transitions").contains(x))
        raise(ErrorKind::ParseError, "missing transition for '" + x + "'");
      Matrix m = rep.dim == 0 ? Matrix(rep.field, 0, 0)
                              : matrix_from_json(j.at("transitions").at(x), rep.field);
      if (m.rows() != rep.dim || m.cols() != rep.dim)
        raise(ErrorKind::ParseError, "transition shape mismatch for '" + x + "'");
      rep.transitions.emplace(x, std::move(m));
    }
    validate_linrep(rep);
  } catch (const Json::exception& e) {
    raise(ErrorKind::ParseError, std::string("automaton JSON: ") + e.what());
  }
  return rep;
}

Json group_to_json(const GroupInput& g) {
  Json gens = Json::array();
  for (const auto& m : g.generators) gens.push_back(matrix_to_json(m));
  return Json{{"field", field_to_json(g.field)}, {"dim", g.dim}, {"generators", gens}};
}

GroupInput group_from_json(const Json& j) {
  GroupInput g;
  try {
    g.field = field_from_json(j.at("field"));
    g.dim = j.at("dim").get<int>();
    for (const auto& m : j.at("generators")) {
      Matrix mat = matrix_from_json(m, g.field);
      if (mat.rows() != g.dim || mat.cols() != g.dim)
        raise(ErrorKind::ParseError, "generator shape mismatch");
      g.generators.push_back(std::move(mat));
    }
  } catch (const Json::exception& e) {
    raise(ErrorKind::ParseError, std::string("group JSON: ") + e.what());
  }
  return g;
}

Json embedding_to_json(const Embedding& e) {
  return Json{{"from", field_to_json(e.from())},
              {"to", field_to_json(e.to())},
              {"gen_image", element_to_json(e.gen_image())}};
}

Embedding embedding_from_json(const Json& j) {
  FieldPtr from = field_from_json(j.at("from"));
  FieldPtr to = field_from_json(j.at("to"));
  return Embedding(from, to, element_from_json(j.at("gen_image"), to));
}

namespace {

Json word_matrix_to_json(const WordMatrix& wm) {
  return Json{{"word", word_to_string(wm.word)}, {"matrix", matrix_to_json(wm.matrix)}};
}

WordMatrix word_matrix_from_json(const Json& j, const FieldPtr& f) {
  return WordMatrix{word_from_string(j.at("word").get<std::string>()),
                    matrix_from_json(j.at("matrix"), f)};
}

}  // namespace

Json certificate_to_json(const EpimonomialCertificate& c) {
  Json steady = Json::array(), reps = Json::array(), perms = Json::object();
  for (const auto& s : c.steady_basis) steady.push_back(word_matrix_to_json(s));
  for (const auto& r : c.coset_reps) reps.push_back(word_matrix_to_json(r));
  for (size_t t = 0; t < c.permutation_images.size(); ++t)
    perms["g" + std::to_string(t + 1)] = c.permutation_images[t];
  return Json{{"kind", "certificate"},
              {"decomposition", decomposition_to_json(c.decomposition)},
              {"steady_basis", steady},
              {"coset_reps", reps},
              {"permutation_images", perms},
              {"diagonal_index", c.diagonal_index}};
}

EpimonomialCertificate certificate_from_json(const Json& j, const FieldPtr& f) {
  EpimonomialCertificate c;
  c.decomposition = decomposition_from_json(j.at("decomposition"), f);
  for (const auto& s : j.at("steady_basis")) c.steady_basis.push_back(word_matrix_from_json(s, f));
  for (const auto& r : j.at("coset_reps")) c.coset_reps.push_back(word_matrix_from_json(r, f));
  const Json& perms = j.at("permutation_images");
  for (size_t t = 1; t <= perms.size(); ++t) {
    std::string key = "g" + std::to_string(t);
    if (!perms.contains(key)) raise(ErrorKind::ParseError, "missing permutation for " + key);
    c.permutation_images.push_back(perms.at(key).get<std::vector<int>>());
  }
  c.diagonal_index = j.at("diagonal_index").get<int>();
  return c;
}

Json refutation_to_json(const RefutationWitness& w) {
  Json out{{"kind", "refutation"},
           {"refutation_kind", refutation_kind_name(w.kind)},
           {"word", word_to_string(w.word)},
           {"matrix", matrix_to_json(w.matrix)}};
  if (w.pair_detail) {
    out["pair_detail"] = Json{{"first_steady", word_matrix_to_json(w.pair_detail->first_steady)},
                              {"second_steady", word_matrix_to_json(w.pair_detail->second_steady)},
                              {"prior", decomposition_to_json(w.pair_detail->prior)},
                              {"partial", decomposition_to_json(w.pair_detail->partial)}};
  }
  return out;
}

RefutationWitness refutation_from_json(const Json& j, const FieldPtr& f) {
  RefutationWitness w{word_from_string(j.at("word").get<std::string>()),
                      matrix_from_json(j.at("matrix"), f), RefutationKind::NonDiagonalizable,
                      std::nullopt};
  std::string kind = j.at("refutation_kind").get<std::string>();
  if (kind == "NonDiagonalizable")
    w.kind = RefutationKind::NonDiagonalizable;
  else if (kind == "NotPowerSplitting")
    w.kind = RefutationKind::NotPowerSplitting;
  else if (kind == "IncompatibleSteadyPair")
    w.kind = RefutationKind::IncompatibleSteadyPair;
  else
    raise(ErrorKind::ParseError, "unknown refutation kind '" + kind + "'");
  if (j.contains("pair_detail")) {
    const Json& pd = j.at("pair_detail");
    w.pair_detail = IncompatiblePairDetail{
        word_matrix_from_json(pd.at("first_steady"), f),
        word_matrix_from_json(pd.at("second_steady"), f),
        decomposition_from_json(pd.at("prior"), f),
        decomposition_from_json(pd.at("partial"), f)};
  }
  return w;
}

Json spectrum_certificate_to_json(const SpectrumCertificate& c) {
  Json flag = Json::array();
  for (const auto& s : c.chain.flag) flag.push_back(subspace_to_json(s));
  Json blocks = Json::array();
  for (const auto& per_gen : c.chain.block_images) {
    Json row = Json::array();
    for (const auto& m : per_gen) row.push_back(matrix_to_json(m));
    blocks.push_back(std::move(row));
  }
  Json kbasis = Json::array();
  for (const auto& b : c.restriction.k_basis) kbasis.push_back(element_to_json(b));
  Json restricted = Json::array();
  for (const auto& per_block : c.restricted_blocks) {
    Json row = Json::array();
    for (const auto& m : per_block) row.push_back(matrix_to_json(m));
    restricted.push_back(std::move(row));
  }
  Json per_block = Json::array();
  for (const auto& cert : c.per_block) per_block.push_back(certificate_to_json(cert));
  const BlockMonomialLift& l = c.synthesized;
  Json kflag = Json::array();
  for (const auto& s : l.k_flag) kflag.push_back(subspace_to_json(s));
  Json kcerts = Json::array();
  for (const auto& cert : l.k_block_certs) kcerts.push_back(certificate_to_json(cert));
  Json reps = Json::array();
  for (const auto& r : l.coset_reps) reps.push_back(word_matrix_to_json(r));
  Json lifted = Json::array();
  for (const auto& m : l.lifted) lifted.push_back(matrix_to_json(m));
  return Json{{"kind", "spectrum_certificate"},
              {"chain", Json{{"extension", field_to_json(c.chain.extension)},
                             {"embedding", embedding_to_json(c.chain.embedding)},
                             {"flag", flag},
                             {"block_images", blocks}}},
              {"restriction", Json{{"k_basis", kbasis}}},
              {"restricted_blocks", restricted},
              {"per_block", per_block},
              {"synthesized", Json{{"k_flag", kflag},
                                   {"basis", matrix_to_json(l.basis)},
                                   {"block_offsets", l.block_offsets},
                                   {"k_block_certs", kcerts},
                                   {"coset_reps", reps},
                                   {"lifted", lifted},
                                   {"epimorphism", matrix_to_json(l.epimorphism)}}}};
}

SpectrumCertificate spectrum_certificate_from_json(const Json& j, const FieldPtr& base) {
  SpectrumCertificate c;
  const Json& chain = j.at("chain");
  c.chain.extension = field_from_json(chain.at("extension"));
  c.chain.embedding = embedding_from_json(chain.at("embedding"));
  for (const auto& s : chain.at("flag"))
    c.chain.flag.push_back(subspace_from_json(s, c.chain.extension));
  for (const auto& per_gen : chain.at("block_images")) {
    std::vector<Matrix> row;
    for (const auto& m : per_gen) row.push_back(matrix_from_json(m, c.chain.extension));
    c.chain.block_images.push_back(std::move(row));
  }
  c.restriction.k_in_l = c.chain.embedding;
  for (const auto& b : j.at("restriction").at("k_basis"))
    c.restriction.k_basis.push_back(element_from_json(b, c.chain.extension));
  for (const auto& per_block : j.at("restricted_blocks")) {
    std::vector<Matrix> row;
    for (const auto& m : per_block) row.push_back(matrix_from_json(m, base));
    c.restricted_blocks.push_back(std::move(row));
  }
  for (const auto& cert : j.at("per_block"))
    c.per_block.push_back(certificate_from_json(cert, base));
  const Json& syn = j.at("synthesized");
  for (const auto& s : syn.at("k_flag"))
    c.synthesized.k_flag.push_back(subspace_from_json(s, base));
  c.synthesized.basis = matrix_from_json(syn.at("basis"), base);
  c.synthesized.block_offsets = syn.at("block_offsets").get<std::vector<int>>();
  for (const auto& cert : syn.at("k_block_certs"))
    c.synthesized.k_block_certs.push_back(certificate_from_json(cert, base));
  for (const auto& r : syn.at("coset_reps"))
    c.synthesized.coset_reps.push_back(word_matrix_from_json(r, base));
  for (const auto& m : syn.at("lifted"))
    c.synthesized.lifted.push_back(matrix_from_json(m, base));
  c.synthesized.epimorphism = matrix_from_json(syn.at("epimorphism"), base);
  return c;
}

Json spectrum_refutation_to_json(const SpectrumRefutation& r) {
  Json gens = Json::array();
  for (const auto& m : r.block_generators) gens.push_back(matrix_to_json(m));
  return Json{{"kind", "spectrum_refutation"},
              {"block_index", r.block_index},
              {"block_generators", gens},
              {"witness", refutation_to_json(r.witness)}};
}

SpectrumRefutation spectrum_refutation_from_json(const Json& j, const FieldPtr& f) {
  SpectrumRefutation r;
  r.block_index = j.at("block_index").get<int>();
  for (const auto& m : j.at("block_generators"))
    r.block_generators.push_back(matrix_from_json(m, f));
  r.witness = refutation_from_json(j.at("witness"), f);
  return r;
}

Json classification_to_json(const SeriesClassification& c) {
  Json out{{"class", series_class_name(c.cls)}, {"minimal", linrep_to_json(c.minimal)}};
  if (c.finite) {
    Json gamma = Json::array();
    for (const auto& x : c.finite->gamma_generators) gamma.push_back(element_to_json(x));
    out["finite"] = Json{{"minimal_M", c.finite->minimal_m},
                         {"gamma_generators", gamma},
                         {"synthesized", linrep_to_json(c.finite->synthesized)},
                         {"group_certificate", certificate_to_json(c.finite->group_certificate)}};
  }
  if (c.spectrum) out["spectrum"] = spectrum_certificate_to_json(*c.spectrum);
  if (c.block_synthesized) out["block_synthesized"] = linrep_to_json(*c.block_synthesized);
  if (c.group_refutation) out["group_refutation"] = refutation_to_json(*c.group_refutation);
  if (c.spectrum_refutation)
    out["spectrum_refutation"] = spectrum_refutation_to_json(*c.spectrum_refutation);
  return out;
}

SeriesClassification classification_from_json(const Json& j) {
  SeriesClassification c{SeriesClass::ExponentialOnly, linrep_from_json(j.at("minimal")),
                         std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  std::string cls = j.at("class").get<std::string>();
  if (cls == "FinitelyAmbiguousEquivalent")
    c.cls = SeriesClass::FinitelyAmbiguousEquivalent;
  else if (cls == "PolynomiallyAmbiguousEquivalent")
    c.cls = SeriesClass::PolynomiallyAmbiguousEquivalent;
  else if (cls == "ExponentialOnly")
    c.cls = SeriesClass::ExponentialOnly;
  else
    raise(ErrorKind::ParseError, "unknown series class '" + cls + "'");
  const FieldPtr& f = c.minimal.field;
  if (j.contains("finite")) {
    const Json& fin = j.at("finite");
    AmbiguityCertificate amb;
    amb.minimal_m = fin.at("minimal_M").get<int>();
    for (const auto& x : fin.at("gamma_generators"))
      amb.gamma_generators.push_back(element_from_json(x, f));
    amb.synthesized = linrep_from_json(fin.at("synthesized"));
    amb.group_certificate = certificate_from_json(fin.at("group_certificate"), f);
    c.finite = std::move(amb);
  }
  if (j.contains("spectrum"))
    c.spectrum = spectrum_certificate_from_json(j.at("spectrum"), f);
  if (j.contains("block_synthesized"))
    c.block_synthesized = linrep_from_json(j.at("block_synthesized"));
  if (j.contains("group_refutation"))
    c.group_refutation = refutation_from_json(j.at("group_refutation"), f);
  if (j.contains("spectrum_refutation"))
    c.spectrum_refutation = spectrum_refutation_from_json(j.at("spectrum_refutation"), f);
  return c;
}

Json structural_report_to_json(const StructuralReport& r) {
  return Json{{"deterministic", r.deterministic},
              {"unambiguous", r.unambiguous},
              {"eda", r.eda},
              {"ida", r.ida},
              {"class", ambiguity_class_name(r.cls)}};
}

Json spectrum_report_to_json(const SpectrumReport& r) {
  Json eigen = Json::array();
  for (const auto& [value, mult] : r.eigenvalues)
    eigen.push_back(Json{{"value", element_to_json(value)}, {"multiplicity", mult}});
  return Json{{"element", matrix_to_json(r.element)},
              {"splitting_field", field_to_json(r.splitting_field)},
              {"embedding", embedding_to_json(r.embedding)},
              {"eigenvalues", eigen},
              {"diagonalizable", r.diagonalizable}};
}

Json steady_analysis_to_json(const SteadyAnalysis& a) {
  Json out{{"element", matrix_to_json(a.element)}, {"is_steady", a.is_steady}};
  out["power_splitting_exponent"] =
      a.power_splitting_exponent ? Json(*a.power_splitting_exponent) : Json(nullptr);
  out["steady_exponent"] = a.steady_exponent ? Json(*a.steady_exponent) : Json(nullptr);
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::ParseError, "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    raise(ErrorKind::ParseError, std::string("JSON syntax: ") + e.what());
  }
  return j;
}

}  // namespace ambra
