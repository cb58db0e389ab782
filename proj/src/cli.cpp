#include "ambra/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "ambra/json_io.hpp"

namespace ambra {
namespace {

SynthConfig synth_config(const RunConfig& rc) {
  SynthConfig cfg;
  cfg.repsplit.seed = rc.seed;
  if (rc.bfs_node_cap) cfg.groupdec.bfs_node_cap = Integer(*rc.bfs_node_cap);
  return cfg;
}

void emit(std::ostream& out, const RunConfig& rc, const Json& payload,
          const std::vector<std::string>& text_lines) {
  if (rc.json_output) {
    out << payload.dump(2) << "\n";
  } else {
    for (const auto& line : text_lines) out << line << "\n";
  }
}

GroupInput transition_group(const LinRep& rep) {
  GroupInput g;
  g.field = rep.field;
  g.dim = rep.dim;
  for (const auto& x : rep.alphabet) g.generators.push_back(rep.transition(x));
  return g;
}

// Re-verifies every certificate and witness carried by a classification; the
// reports are self-certifying. Errors: Internal on failure.
void verify_classification(const SeriesClassification& c) {
  if (c.minimal.dim == 0) return;  // zero series: nothing to re-check
  GroupInput g = transition_group(c.minimal);
  switch (c.cls) {
    case SeriesClass::FinitelyAmbiguousEquivalent: {
      if (!c.finite) raise(ErrorKind::Internal, "missing finite evidence");
      if (!verify_certificate(g, c.finite->group_certificate))
        raise(ErrorKind::Internal, "group certificate failed re-verification");
      if (!equivalent(c.finite->synthesized, c.minimal))
        raise(ErrorKind::Internal, "synthesized automaton not equivalent");
      break;
    }
    case SeriesClass::PolynomiallyAmbiguousEquivalent: {
      if (!c.spectrum || !c.block_synthesized || !c.group_refutation)
        raise(ErrorKind::Internal, "missing polynomial evidence");
      if (!verify_refutation(g, *c.group_refutation))
        raise(ErrorKind::Internal, "group refutation failed re-verification");
      if (!verify_spectrum_certificate(g, *c.spectrum))
        raise(ErrorKind::Internal, "spectrum certificate failed re-verification");
      if (!equivalent(*c.block_synthesized, c.minimal))
        raise(ErrorKind::Internal, "block synthesis not equivalent");
      break;
    }
    case SeriesClass::ExponentialOnly: {
      if (!c.group_refutation || !c.spectrum_refutation)
        raise(ErrorKind::Internal, "missing refutations");
      if (!verify_refutation(g, *c.group_refutation))
        raise(ErrorKind::Internal, "group refutation failed re-verification");
      if (!verify_spectrum_refutation(g, *c.spectrum_refutation))
        raise(ErrorKind::Internal, "spectrum refutation failed re-verification");
      break;
    }
  }
}

std::vector<std::string> classification_summary(const SeriesClassification& c) {
  std::vector<std::string> lines;
  lines.push_back(std::string("class: ") + series_class_name(c.cls));
  lines.push_back("minimal dimension: " + std::to_string(c.minimal.dim));
  if (c.finite) {
    lines.push_back("minimal_M: " + std::to_string(c.finite->minimal_m));
    lines.push_back("synthesized dimension: " + std::to_string(c.finite->synthesized.dim));
    lines.push_back("gamma generators: " + std::to_string(c.finite->gamma_generators.size()));
  }
  if (c.group_refutation)
    lines.push_back(std::string("group refutation: ") +
                    refutation_kind_name(c.group_refutation->kind) + " at word '" +
                    word_to_string(c.group_refutation->word) + "'");
  if (c.spectrum) {
    lines.push_back("spectrum blocks: " + std::to_string(c.spectrum->per_block.size()));
    lines.push_back("block synthesis dimension: " + std::to_string(c.block_synthesized->dim));
  }
  if (c.spectrum_refutation)
    lines.push_back(std::string("spectrum refutation: ") +
                    refutation_kind_name(c.spectrum_refutation->witness.kind) + " in block " +
                    std::to_string(c.spectrum_refutation->block_index) + " at word '" +
                    word_to_string(c.spectrum_refutation->witness.word) + "'");
  return lines;
}

int cmd_classify(const std::string& path, const RunConfig& rc, std::ostream& out) {
  LinRep rep = linrep_from_json(load_json_file(path));
  SeriesClassification c = classify_series(rep, synth_config(rc));
  verify_classification(c);
  emit(out, rc, classification_to_json(c), classification_summary(c));
  return 0;
}

int cmd_synthesize(const std::string& path, const std::string& target,
                   const std::string& output, const RunConfig& rc, std::ostream& out,
                   std::ostream& err) {
  LinRep rep = linrep_from_json(load_json_file(path));
  SeriesClassification c = classify_series(rep, synth_config(rc));
  verify_classification(c);
  std::optional<LinRep> synth;
  if (target == "monomial") {
    if (c.cls == SeriesClass::FinitelyAmbiguousEquivalent) synth = c.finite->synthesized;
  } else {  // block-monomial
    if (c.cls == SeriesClass::FinitelyAmbiguousEquivalent)
      synth = c.finite->synthesized;  // monomial is block-monomial with one block
    else if (c.cls == SeriesClass::PolynomiallyAmbiguousEquivalent)
      synth = c.block_synthesized;
  }
  if (!synth)
    raise(ErrorKind::TargetUnreachable,
          "classification " + std::string(series_class_name(c.cls)) + " does not admit target " +
              target);
  // Final re-check before writing: exact equivalence plus sampled words.
  if (!equivalent(*synth, c.minimal)) raise(ErrorKind::Internal, "synthesis equivalence failed");
  int wlen = rc.word_check_length ? *rc.word_check_length
                                  : std::min(8, c.minimal.dim + synth->dim + 1);
  for (const auto& w : words_up_to(rep.alphabet, wlen))
    if (evaluate(*synth, w) != evaluate(rep, w))
      raise(ErrorKind::Internal, "sampled word mismatch after synthesis");
  Json payload = linrep_to_json(*synth);
  if (output.empty()) {
    out << payload.dump(2) << "\n";
  } else {
    std::ofstream of(output);
    if (!of) raise(ErrorKind::ParseError, "cannot write '" + output + "'");
    of << payload.dump(2) << "\n";
    if (!rc.json_output) err << "";  // diagnostics only on stderr
    out << "wrote " << output << " (dimension " << synth->dim << ")\n";
  }
  return 0;
}

int cmd_group(const std::string& sub, const std::string& path, const RunConfig& rc,
              std::ostream& out) {
  GroupInput g = group_from_json(load_json_file(path));
  SynthConfig cfg = synth_config(rc);
  if (sub == "analyze") {
    auto res = decide_virtually_diagonalizable(g, cfg.groupdec);
    if (std::holds_alternative<EpimonomialCertificate>(res)) {
      const auto& cert = std::get<EpimonomialCertificate>(res);
      if (!verify_certificate(g, cert))
        raise(ErrorKind::Internal, "certificate failed re-verification");
      emit(out, rc, certificate_to_json(cert),
           {"outcome: certificate", "diagonal_index: " + std::to_string(cert.diagonal_index),
            "pieces: " + std::to_string(cert.decomposition.pieces.size())});
    } else {
      const auto& wit = std::get<RefutationWitness>(res);
      if (!verify_refutation(g, wit)) raise(ErrorKind::Internal, "witness failed re-verification");
      emit(out, rc, refutation_to_json(wit),
           {std::string("outcome: refutation ") + refutation_kind_name(wit.kind),
            "word: '" + word_to_string(wit.word) + "'"});
    }
    return 0;
  }
  // spectrum
  auto res = decide_fg_spectrum(g, cfg.repsplit, cfg.groupdec);
  if (std::holds_alternative<SpectrumCertificate>(res)) {
    const auto& cert = std::get<SpectrumCertificate>(res);
    if (!verify_spectrum_certificate(g, cert))
      raise(ErrorKind::Internal, "spectrum certificate failed re-verification");
    emit(out, rc, spectrum_certificate_to_json(cert),
         {"outcome: spectrum_certificate",
          "blocks: " + std::to_string(cert.per_block.size()),
          "extension degree: " + std::to_string(cert.chain.extension->degree()),
          "lift dimension: " + std::to_string(cert.synthesized.lifted.empty()
                                                  ? 0
                                                  : cert.synthesized.lifted[0].rows())});
  } else {
    const auto& r = std::get<SpectrumRefutation>(res);
    if (!verify_spectrum_refutation(g, r))
      raise(ErrorKind::Internal, "spectrum refutation failed re-verification");
    emit(out, rc, spectrum_refutation_to_json(r),
         {std::string("outcome: refutation ") + refutation_kind_name(r.witness.kind),
          "block: " + std::to_string(r.block_index),
          "word: '" + word_to_string(r.witness.word) + "'"});
  }
  return 0;
}

int cmd_minimize(const std::string& path, const RunConfig& rc, std::ostream& out) {
  LinRep rep = linrep_from_json(load_json_file(path));
  LinRep min = minimize(rep);
  emit(out, rc, linrep_to_json(min),
       {"dimension: " + std::to_string(rep.dim) + " -> " + std::to_string(min.dim)});
  if (!rc.json_output) out << linrep_to_json(min).dump(2) << "\n";
  return 0;
}

int cmd_equiv(const std::string& a, const std::string& b, const RunConfig& rc, std::ostream& out) {
  LinRep ra = linrep_from_json(load_json_file(a));
  LinRep rb = linrep_from_json(load_json_file(b));
  bool eq = equivalent(ra, rb);
  emit(out, rc, Json{{"equivalent", eq}}, {std::string("equivalent: ") + (eq ? "true" : "false")});
  return 0;
}

int cmd_eval(const std::string& path, const std::string& word, const RunConfig& rc,
             std::ostream& out) {
  LinRep rep = linrep_from_json(load_json_file(path));
  FieldElement v = evaluate(rep, parse_word(word, rep.alphabet));
  emit(out, rc, Json{{"value", element_to_json(v)}}, {"value: " + v.to_string()});
  return 0;
}

int cmd_ambiguity(const std::string& path, const RunConfig& rc, std::ostream& out) {
  LinRep rep = linrep_from_json(load_json_file(path));
  StructuralReport r = structural_ambiguity(rep);
  emit(out, rc, structural_report_to_json(r),
       {std::string("class: ") + ambiguity_class_name(r.cls),
        std::string("deterministic: ") + (r.deterministic ? "true" : "false"),
        std::string("unambiguous: ") + (r.unambiguous ? "true" : "false"),
        std::string("eda: ") + (r.eda ? "true" : "false"),
        std::string("ida: ") + (r.ida ? "true" : "false")});
  return 0;
}

int cmd_lrs(const std::string& path, const RunConfig& rc, std::ostream& out) {
  LinRep rep = linrep_from_json(load_json_file(path));
  if (rep.alphabet.size() != 1)
    raise(ErrorKind::ParseError, "lrs needs a one-letter automaton");
  Matrix a = rep.transition(rep.alphabet[0]);
  LrsClassification c = lrs_classify(rep.initial, a, rep.final, synth_config(rc));
  verify_classification(c.base);
  Json payload = classification_to_json(c.base);
  payload["spectrum_report"] = spectrum_report_to_json(spectrum(a));
  payload["steady_analysis"] = steady_analysis_to_json(analyze_steady(a));
  std::vector<std::string> lines = classification_summary(c.base);
  if (c.improvement_min_poly) {
    Json mp = Json::array();
    for (const auto& r : c.improvement_min_poly->rational_coeffs())
      mp.push_back(rational_to_string(r));
    payload["improvement_field_min_poly"] = mp;
    lines.push_back("improvement field degree: " +
                    std::to_string(c.improvement_min_poly->degree()));
  }
  emit(out, rc, payload, lines);
  return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact ambiguity analysis for invertible weighted automata"};
  app.require_subcommand(1);
  RunConfig rc;
  app.add_option("--seed", rc.seed, "deterministic seed for randomized searches");
  long bfs_cap = 0, radius_cap = 0;
  auto* bfs_opt = app.add_option("--bfs-cap", bfs_cap, "BFS node cap (diagnostic)");
  auto* rad_opt = app.add_option("--radius-cap", radius_cap, "exponent search radius cap");
  app.add_flag("--json", rc.json_output, "emit JSON reports");
  int word_check = 0;
  auto* wc_opt = app.add_option("--word-check-length", word_check,
                                "word length for synthesis spot checks");

  std::string path, path2, word, target = "monomial", output, group_sub;
  auto* classify = app.add_subcommand("classify", "classify a rational series");
  classify->add_option("file", path)->required();
  auto* synthesize = app.add_subcommand("synthesize", "emit an equivalent low-ambiguity automaton");
  synthesize->add_option("file", path)->required();
  synthesize->add_option("--target", target)
      ->check(CLI::IsMember({"monomial", "block-monomial"}));
  synthesize->add_option("-o,--output", output, "output path (default stdout)");
  auto* group = app.add_subcommand("group", "matrix group decisions");
  group->add_option("subcommand", group_sub)->required()->check(CLI::IsMember({"analyze", "spectrum"}));
  group->add_option("file", path)->required();
  auto* minimize_cmd = app.add_subcommand("minimize", "canonical minimal automaton");
  minimize_cmd->add_option("file", path)->required();
  auto* equiv = app.add_subcommand("equiv", "decide equivalence of two automata");
  equiv->add_option("file1", path)->required();
  equiv->add_option("file2", path2)->required();
  auto* eval_cmd = app.add_subcommand("eval", "evaluate the automaton on a word");
  eval_cmd->add_option("file", path)->required();
  eval_cmd->add_option("--word", word, "word over the alphabet")->required();
  auto* ambiguity = app.add_subcommand("ambiguity", "structural Weber-Seidl report");
  ambiguity->add_option("file", path)->required();
  auto* lrs = app.add_subcommand("lrs", "classify a linear recurrence (one-letter automaton)");
  lrs->add_option("file", path)->required();

  std::vector<const char*> argv;
  argv.push_back("ambra");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "argument error: " << e.what() << "\n";
    return 1;
  }
  if (*bfs_opt) {
    if (bfs_cap <= 0) {
      err << "ParseError: --bfs-cap must be positive\n";
      return 1;
    }
    rc.bfs_node_cap = bfs_cap;
  }
  if (*rad_opt) {
    if (radius_cap <= 0) {
      err << "ParseError: --radius-cap must be positive\n";
      return 1;
    }
    rc.search_radius_cap = radius_cap;
  }
  if (*wc_opt) {
    if (word_check < 0) {
      err << "ParseError: --word-check-length must be non-negative\n";
      return 1;
    }
    rc.word_check_length = word_check;
  }

  try {
    if (*classify) return cmd_classify(path, rc, out);
    if (*synthesize) return cmd_synthesize(path, target, output, rc, out, err);
    if (*group) return cmd_group(group_sub, path, rc, out);
    if (*minimize_cmd) return cmd_minimize(path, rc, out);
    if (*equiv) return cmd_equiv(path, path2, rc, out);
    if (*eval_cmd) return cmd_eval(path, word, rc, out);
    if (*ambiguity) return cmd_ambiguity(path, rc, out);
    if (*lrs) return cmd_lrs(path, rc, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::ParseError:
      case ErrorKind::UnknownLetter:
      case ErrorKind::AlphabetMismatch:
      case ErrorKind::ReduciblePolynomial:
        return 1;
      case ErrorKind::OutOfScope:
      case ErrorKind::TargetUnreachable:
        return 2;
      case ErrorKind::SearchBudgetExceeded:
        return 3;
      default:
        return 4;
    }
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
  err << "no command given\n";
  return 1;
}

}  // namespace ambra
