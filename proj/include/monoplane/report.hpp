#pragma once

// Text, CSV and JSON renderings of evaluation and verification results.

#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "monoplane/eval.hpp"
#include "monoplane/io.hpp"
#include "monoplane/verify.hpp"

namespace monoplane {

using Json = nlohmann::ordered_json;

enum class OutputFormat { text, csv, json };

inline OutputFormat parse_output_format(std::string_view s) {
  if (s == "text") return OutputFormat::text;
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw InvalidArgument("unknown format '" + std::string(s) + "'");
}

inline std::string_view extension(OutputFormat f) {
  switch (f) {
    case OutputFormat::text: return "txt";
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
  }
  return "txt";
}

inline Json to_json(const ErrorCounts& c) {
  return Json{{"total", c.total}, {"false_pos", c.false_pos}, {"false_neg", c.false_neg}};
}

inline Json to_json(const EvaluationReport& r) {
  Json records = Json::array();
  for (const auto& rec : r.records) {
    Json j{{"i", rec.i}, {"mu", rec.mu}, {"field", rec.field_value}};
    j["gamma_reference"] = rec.gamma_reference ? Json(*rec.gamma_reference) : Json(nullptr);
    j["tau"] = rec.tau;
    records.push_back(std::move(j));
  }
  Json cosines = Json::object();
  for (const auto& [name, value] : r.cosines) cosines[name] = value;
  return Json{{"set_size", r.set_size},
              {"error_fraction", r.error_fraction},
              {"error_percent", format_percent(r.error_fraction)},
              {"counts", to_json(r.counts)},
              {"records", std::move(records)},
              {"cosines", std::move(cosines)}};
}

inline EvaluationReport report_from_json(const Json& j) {
  EvaluationReport r;
  r.set_size = j.at("set_size").get<std::size_t>();
  r.error_fraction = j.at("error_fraction").get<double>();
  r.counts.total = j.at("counts").at("total").get<std::size_t>();
  r.counts.false_pos = j.at("counts").at("false_pos").get<std::size_t>();
  r.counts.false_neg = j.at("counts").at("false_neg").get<std::size_t>();
  for (const auto& rec : j.at("records")) {
    MisclassifiedRecord m;
    m.i = rec.at("i").get<std::size_t>();
    m.mu = rec.at("mu").get<std::size_t>();
    m.field_value = rec.at("field").get<double>();
    if (!rec.at("gamma_reference").is_null()) m.gamma_reference = rec.at("gamma_reference").get<double>();
    m.tau = rec.at("tau").get<int>();
    r.records.push_back(m);
  }
  if (j.contains("cosines")) {
    for (const auto& [name, value] : j.at("cosines").items()) r.cosines.emplace_back(name, value.get<double>());
  }
  return r;
}

inline void write_report_csv(std::ostream& out, const EvaluationReport& r) {
  out << "i,mu,field,gamma_reference,tau\n";
  for (const auto& rec : r.records) {
    out << rec.i << ',' << rec.mu << ',' << format_real(rec.field_value) << ','
        << (rec.gamma_reference ? format_real(*rec.gamma_reference) : std::string()) << ',' << rec.tau << '\n';
  }
}

// Columns i, mu, Field, gamma(reference), tau.
inline void write_report_text(std::ostream& out, const EvaluationReport& r, std::string_view title = {},
                              std::string_view reference_name = "ref") {
  if (!title.empty()) out << title << '\n';
  out << "eps = " << format_percent(r.error_fraction) << " (" << r.counts.false_pos << " F+ "
      << r.counts.false_neg << " F-) over " << r.set_size << " patterns\n";
  if (!r.records.empty()) {
    const std::string gamma_header = "gamma(" + std::string(reference_name) + ")";
    char buf[128];
    std::snprintf(buf, sizeof buf, "%4s %5s %14s %16s %4s\n", "i", "mu", "Field", gamma_header.c_str(), "tau");
    out << buf;
    for (const auto& rec : r.records) {
      const std::string gamma = rec.gamma_reference ? format_sci(*rec.gamma_reference) : "-";
      std::snprintf(buf, sizeof buf, "%4zu %5zu %14s %16s %4d\n", rec.i, rec.mu,
                    format_sci(rec.field_value).c_str(), gamma.c_str(), rec.tau);
      out << buf;
    }
  }
  for (const auto& [name, value] : r.cosines) out << "cos " << name << " = " << format_fixed(value, 5) << '\n';
}

inline void write_report(std::ostream& out, const EvaluationReport& r, OutputFormat format,
                         std::string_view title = {}) {
  switch (format) {
    case OutputFormat::text: write_report_text(out, r, title); break;
    case OutputFormat::csv: write_report_csv(out, r); break;
    case OutputFormat::json: out << to_json(r).dump(2) << '\n'; break;
  }
}

namespace detail {

inline Json mu_list(const std::vector<std::size_t>& v) {
  Json j = Json::array();
  for (const auto mu : v) j.push_back(mu);
  return j;
}

inline std::string join_mu(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
  return s.empty() ? "-" : s;
}

inline Json to_json(const TableComparison& c) {
  return Json{{"label", c.label},
              {"exact", c.exact()},
              {"counts", monoplane::to_json(c.report.counts)},
              {"expected_counts", monoplane::to_json(c.expected_counts)},
              {"error_percent", format_percent(c.report.error_fraction)},
              {"missing", mu_list(c.missing)},
              {"extra", mu_list(c.extra)},
              {"max_field_deviation", c.max_field_deviation},
              {"max_gamma_deviation", c.max_gamma_deviation},
              {"gamma_compared", c.gamma_compared},
              {"report", monoplane::to_json(c.report)}};
}

}  // namespace detail

inline Json to_json(const VerificationResult& v) {
  Json modes = Json::array();
  for (const auto& m : v.modes) {
    modes.push_back(Json{{"mode", m.mode.name()},
                         {"reproduces", m.reproduces()},
                         {"w_sonar_counts", to_json(m.sonar_counts)},
                         {"w_sonar_min_stability", m.sonar_min_stability},
                         {"test_side", detail::to_json(m.test_side)},
                         {"train_side", detail::to_json(m.train_side)}});
  }
  Json cosines = Json::array();
  for (const auto& c : v.cosines) {
    cosines.push_back(Json{{"a", to_string(c.a)},
                           {"b", to_string(c.b)},
                           {"reference", c.reference},
                           {"tolerance", c.tolerance},
                           {"true_cosine", c.true_cosine},
                           {"raw_product", c.raw_product},
                           {"true_cosine_matches", c.matches(CosineMode::true_cosine)},
                           {"raw_product_matches", c.matches(CosineMode::raw_product)}});
  }
  Json perturbations = Json::array();
  for (const auto& p : v.perturbations) {
    perturbations.push_back(Json{{"label", p.label},
                                 {"delta", p.delta},
                                 {"nominal", p.nominal},
                                 {"min_count", p.min_count},
                                 {"max_count", p.max_count},
                                 {"perturbations", p.perturbations},
                                 {"changing", p.changing}});
  }
  const auto cm = v.cosine_mode();
  return Json{{"canonical_mode", v.canonical ? Json(v.modes[*v.canonical].mode.name()) : Json(nullptr)},
              {"closest_mode", v.modes[v.closest].mode.name()},
              {"modes", std::move(modes)},
              {"cosines", std::move(cosines)},
              {"cosine_mode", cm ? Json(std::string(to_string(*cm))) : Json(nullptr)},
              {"perturbations", std::move(perturbations)}};
}

inline void write_verification_csv(std::ostream& out, const VerificationResult& v) {
  out << "mode,side,total,false_pos,false_neg,expected_total,missing,extra,max_gamma_deviation,exact\n";
  for (const auto& m : v.modes) {
    for (const auto* side : {&m.test_side, &m.train_side}) {
      out << m.mode.name() << ',' << side->label << ',' << side->report.counts.total << ','
          << side->report.counts.false_pos << ',' << side->report.counts.false_neg << ','
          << side->expected_counts.total << ',' << detail::join_mu(side->missing) << ','
          << detail::join_mu(side->extra) << ',' << format_real(side->max_gamma_deviation) << ','
          << (side->exact() ? 1 : 0) << '\n';
    }
  }
}

inline void write_verification_text(std::ostream& out, const VerificationResult& v,
                                    CosineMode highlighted = CosineMode::true_cosine) {
  out << "Published-weight verification\n\n";
  for (const auto& m : v.modes) {
    out << "[" << m.mode.name() << "] " << (m.reproduces() ? "reproduces both tables" : "does not reproduce")
        << '\n';
    for (const auto* side : {&m.test_side, &m.train_side}) {
      out << "  " << side->label << ": " << side->report.counts.total << " errors (" << side->report.counts.false_pos
          << " F+ " << side->report.counts.false_neg << " F-), eps = " << format_percent(side->report.error_fraction)
          << "; expected " << side->expected_counts.total << " (" << side->expected_counts.false_pos << " F+ "
          << side->expected_counts.false_neg << " F-)\n"
          << "    missing: " << detail::join_mu(side->missing) << "\n"
          << "    extra:   " << detail::join_mu(side->extra) << "\n"
          << "    max |gamma(W_Sonar) - table| = " << format_sci(side->max_gamma_deviation, 3) << " over "
          << side->gamma_compared << " rows\n";
    }
    out << "  W_Sonar on all: " << m.sonar_counts.total << " errors, min stability "
        << format_sci(m.sonar_min_stability, 3) << "\n\n";
  }
  if (v.canonical) {
    const auto& m = v.modes[*v.canonical];
    out << "Canonical mode: " << m.mode.name() << "\n\n";
    write_report_text(out, m.test_side.report, "Bad patterns over Test (classifier W_Train)", "W_Sonar");
    out << '\n';
    write_report_text(out, m.train_side.report, "Bad patterns over Train (classifier W_Test)", "W_Sonar");
    out << '\n';
  } else {
    out << "No mode reproduces the tables; closest mode: " << v.modes[v.closest].mode.name() << "\n";
    for (const auto& p : v.perturbations) {
      out << "  " << p.label << ": +-" << format_sci(p.delta, 1) << " per component gives counts "
          << p.min_count << ".." << p.max_count << " (nominal " << p.nominal << ", " << p.changing << " of "
          << p.perturbations << " perturbations change it)\n";
    }
    out << '\n';
  }
  out << "Cosines (" << to_string(highlighted) << " listed first)\n";
  for (const auto& c : v.cosines) {
    const double first = highlighted == CosineMode::true_cosine ? c.true_cosine : c.raw_product;
    const double second = highlighted == CosineMode::true_cosine ? c.raw_product : c.true_cosine;
    const auto other = highlighted == CosineMode::true_cosine ? CosineMode::raw_product : CosineMode::true_cosine;
    out << "  (" << to_string(c.a) << "," << to_string(c.b) << "): table " << format_fixed(c.reference, 5) << "  "
        << to_string(highlighted) << " " << format_fixed(first, 5) << (c.matches(highlighted) ? " [match]" : "")
        << "  " << to_string(other) << " " << format_fixed(second, 5) << (c.matches(other) ? " [match]" : "") << '\n';
  }
  const auto cm = v.cosine_mode();
  out << "Cosine mode reproducing the table: " << (cm ? std::string(to_string(*cm)) : std::string("none")) << '\n';
}

}  // namespace monoplane
