#include "magspec/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "magspec/error.hpp"

namespace magspec {

namespace {

using nlohmann::json;

std::string quote(const std::string& s) { return json(s).dump(); }

std::string bool_str(bool b) { return b ? "true" : "false"; }

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorCode::ParseError, std::string("missing key \"") + key + "\"");
  return *it;
}

std::string json_invariants(const InvariantReport& r) {
  std::ostringstream os;
  os << "{\"beta\":" << r.beta << ",\"d\":" << r.d << ",\"I\":" << r.I << ",\"I_alpha\":" << r.I_alpha
     << ",\"I_mu_phi\":" << r.I_mu_phi << ",\"I_mu_phi_min\":" << r.I_mu_phi_min << ",\"tree_count\":" << r.tree_count
     << ",\"lattice_image_ok\":" << bool_str(r.lattice_image_ok) << "}";
  return os.str();
}

}  // namespace

std::string format_double(double x, int significant_digits) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, x);
  return buf;
}

FundamentalGraph graph_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  try {
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "top level must be an object");
    const json& jdim = require(doc, "dim");
    if (!jdim.is_number_integer() || jdim.get<int>() < 1) throw Error(ErrorCode::ParseError, "\"dim\" must be a positive integer");
    const int dim = jdim.get<int>();

    std::vector<std::string> names;
    std::map<std::string, int> ids;
    for (const json& v : require(doc, "vertices")) {
      auto name = v.get<std::string>();
      if (!ids.emplace(name, static_cast<int>(names.size())).second) {
        throw Error(ErrorCode::ParseError, "duplicate vertex \"" + name + "\"");
      }
      names.push_back(name);
    }
    auto vertex = [&](const json& e, const char* key) {
      auto name = require(e, key).get<std::string>();
      auto it = ids.find(name);
      if (it == ids.end()) throw Error(ErrorCode::ParseError, "unknown vertex \"" + name + "\"");
      return it->second;
    };

    std::vector<Edge> edges;
    const json& jedges = require(doc, "edges");
    if (!jedges.is_array()) throw Error(ErrorCode::ParseError, "\"edges\" must be an array");
    for (const json& je : jedges) {
      Edge e;
      e.tail = vertex(je, "tail");
      e.head = vertex(je, "head");
      for (const json& x : require(je, "index")) {
        if (!x.is_number_integer()) throw Error(ErrorCode::ParseError, "edge index entries must be integers");
        e.index.push_back(x.get<int>());
      }
      if (static_cast<int>(e.index.size()) != dim) {
        throw Error(ErrorCode::BadIndexLength, "edge " + std::to_string(edges.size()) + " index has length " +
                                                   std::to_string(e.index.size()) + ", expected " + std::to_string(dim));
      }
      if (auto it = je.find("alpha"); it != je.end()) {
        double a = it->get<double>();
        if (!std::isfinite(a)) throw Error(ErrorCode::ParseError, "non-finite phase");
        e.alpha = wrap_angle(a);
      }
      edges.push_back(std::move(e));
    }

    std::vector<double> potential(names.size(), 0.0);
    if (auto it = doc.find("potential"); it != doc.end()) {
      if (!it->is_object()) throw Error(ErrorCode::ParseError, "\"potential\" must be an object");
      for (const auto& [name, value] : it->items()) {
        auto v = ids.find(name);
        if (v == ids.end()) throw Error(ErrorCode::ParseError, "potential for unknown vertex \"" + name + "\"");
        potential[v->second] = value.get<double>();
      }
    }
    if (names.empty()) throw Error(ErrorCode::ParseError, "graph has no vertices");
    return FundamentalGraph(dim, std::move(names), std::move(edges), std::move(potential));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

FundamentalGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return graph_from_json(buf.str());
}

std::string graph_to_json(const FundamentalGraph& g) {
  const auto& names = g.vertex_names();
  std::ostringstream os;
  os << "{\n  \"dim\": " << g.dim() << ",\n  \"vertices\": [";
  for (std::size_t v = 0; v < names.size(); ++v) os << (v ? ", " : "") << quote(names[v]);
  os << "],\n  \"edges\": [";
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    os << (id ? ",\n" : "\n") << "    {\"tail\": " << quote(names[e.tail]) << ", \"head\": " << quote(names[e.head])
       << ", \"index\": [";
    for (std::size_t s = 0; s < e.index.size(); ++s) os << (s ? ", " : "") << e.index[s];
    os << "], \"alpha\": " << format_double(e.alpha) << "}";
  }
  os << (g.edge_count() ? "\n  ],\n" : "],\n") << "  \"potential\": {";
  for (std::size_t v = 0; v < names.size(); ++v) {
    os << (v ? ", " : "") << quote(names[v]) << ": " << format_double(g.potential()[v]);
  }
  os << "}\n}\n";
  return os.str();
}

std::string invariants_to_json(const InvariantReport& r) { return json_invariants(r) + "\n"; }

std::string band_summary_to_json(const BandSpectrum& s, double bound_4I) {
  std::ostringstream os;
  os << "{\"bands\":[";
  for (std::size_t n = 0; n < s.bands.size(); ++n) {
    os << (n ? "," : "") << "[" << format_double(s.bands[n].lo) << "," << format_double(s.bands[n].hi) << "]";
  }
  os << "],\"flat\":[";
  for (std::size_t n = 0; n < s.flat.size(); ++n) os << (n ? "," : "") << bool_str(s.flat[n]);
  os << "],\"measure\":" << format_double(s.measure) << ",\"bound_4I\":" << format_double(bound_4I) << "}\n";
  return os.str();
}

std::string band_table_to_csv(const BandSpectrum& s, int dim) {
  std::ostringstream os;
  const std::size_t nu = s.bands.size();
  for (int k = 1; k <= dim; ++k) os << (k > 1 ? "," : "") << "theta_" << k;
  for (std::size_t n = 1; n <= nu; ++n) os << ",lambda_" << n;
  os << "\n";
  for (std::size_t row = 0; row < s.eigenvalues.size(); ++row) {
    for (int k = 0; k < dim; ++k) os << (k ? "," : "") << format_double(s.thetas[row][k], 12);
    for (double ev : s.eigenvalues[row]) os << "," << format_double(ev, 12);
    os << "\n";
  }
  return os.str();
}

std::string butterfly_to_csv(const std::vector<ButterflyRow>& rows) {
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.bands.size());
  std::ostringstream os;
  os << "flux";
  for (std::size_t n = 1; n <= width; ++n) os << ",lambda_min_" << n << ",lambda_max_" << n;
  os << "\n";
  for (const auto& r : rows) {
    os << format_double(r.flux, 12);
    for (std::size_t n = 0; n < width; ++n) {
      if (n < r.bands.size()) {
        os << "," << format_double(r.bands[n].lo, 12) << "," << format_double(r.bands[n].hi, 12);
      } else {
        os << ",,";
      }
    }
    os << "\n";
  }
  return os.str();
}

std::string verification_to_json(const VerificationReport& r) {
  std::ostringstream os;
  os << "{\"passed\":" << bool_str(r.passed()) << ",\"invariants\":" << json_invariants(r.invariants)
     << ",\"checks\":[";
  for (std::size_t k = 0; k < r.checks.size(); ++k) {
    const CheckResult& c = r.checks[k];
    os << (k ? "," : "") << "\n  {\"name\":" << quote(c.name) << ",\"passed\":" << bool_str(c.passed)
       << ",\"worst\":" << format_double(c.worst) << ",\"detail\":" << quote(c.detail) << "}";
  }
  const CheckResult* fail = r.first_failure();
  os << "\n],\"first_failure\":" << (fail ? quote(fail->name) : "null") << "}\n";
  return os.str();
}

std::string matrix_to_json(const ComplexMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? "," : "") << "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << (j ? "," : "") << "[" << format_double(m(i, j).real()) << "," << format_double(m(i, j).imag()) << "]";
    }
    os << "]";
  }
  os << "]\n";
  return os.str();
}

}  // namespace magspec
