// Command-line front end. Reads a matrix document from --input or stdin and
// writes a JSON report to stdout.
//
// Exit codes: 0 success, 1 domain failure, 2 usage error, 3 budget exhausted.

#include "mutclass/mutclass.hpp"
#include "mutclass/service.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace mutclass;

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct Options {
  std::string input;
  bool pretty = false;
  unsigned jobs = 1;
};

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), {}}; }

MatrixDocument load(const Options& opt) {
  if (opt.input.empty() || opt.input == "-") return parse_matrix(read_all(std::cin));
  std::ifstream file(opt.input);
  if (!file) throw DocumentError("cannot open " + opt.input);
  return parse_matrix(read_all(file));
}

void print(const Options& opt, const Json& j) { std::cout << (opt.pretty ? j.dump(2) : j.dump()) << "\n"; }

std::vector<std::size_t> parse_sequence(const std::string& text, std::size_t rows) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    long long k = 0;
    try {
      std::size_t used = 0;
      k = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--seq", "not an index list: " + text);
    }
    if (k < 1 || static_cast<std::size_t>(k) > rows)
      throw std::out_of_range("mutation index " + std::to_string(k) + " out of range");
    out.push_back(static_cast<std::size_t>(k - 1));
  }
  return out;
}

Diagram connected_principal_diagram(const MatrixDocument& doc) {
  Diagram g = diagram_of(doc.matrix.principal());
  if (!g.is_connected()) throw std::invalid_argument("the principal part must have a connected diagram");
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mutation of skew-symmetrizable matrices and their extensions"};
  Options opt;
  app.add_option("--input,-i", opt.input, "Matrix document (JSON); stdin when omitted")->expected(1);
  app.add_flag("--pretty", opt.pretty, "Indented output");
  app.add_option("--jobs", opt.jobs, "Worker threads for class enumeration")->check(CLI::PositiveNumber);
  app.require_subcommand(1);

  auto* mutate_cmd = app.add_subcommand("mutate", "Mutate at an index or along a sequence (1-based)");
  long long at = 0;
  std::string seq;
  auto* at_opt = mutate_cmd->add_option("--at", at, "Mutation index");
  auto* seq_opt = mutate_cmd->add_option("--seq", seq, "Comma-separated indices, applied left to right");
  at_opt->excludes(seq_opt);

  auto* classify_cmd = app.add_subcommand("classify", "Finite type and Dynkin label of the principal part");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Explore the mutation class of the input matrix");
  std::size_t budget = 1000000;
  bool principal = false;
  enumerate_cmd->add_option("--budget", budget, "Node budget")->check(CLI::PositiveNumber);
  enumerate_cmd->add_flag("--principal", principal, "Explore the principal extension of the principal part");

  auto* minimal_cmd = app.add_subcommand("minimal", "Minimal-infinite test for the principal diagram");

  auto* theorem_cmd = app.add_subcommand("verify-theorem", "Compare finite type with the principal extension's class");
  theorem_cmd->add_option("--budget", budget, "Node budget")->check(CLI::PositiveNumber);

  auto* catalog_cmd = app.add_subcommand("catalog", "Emit a Dynkin or extended Dynkin matrix");
  std::string family;
  std::size_t rank = 0;
  bool affine = false;
  unsigned long long orientation = 0;
  catalog_cmd->add_option("--family", family, "A..G")->required();
  catalog_cmd->add_option("--rank", rank, "Rank (extended diagrams have rank + 1 vertices)")->required();
  catalog_cmd->add_flag("--affine", affine, "Extended Dynkin diagram");
  catalog_cmd->add_option("--orientation", orientation, "Bit mask of reversed edges");

  auto* companion_cmd = app.add_subcommand("companion", "Admissible companion, definiteness and radical");
  std::string check_path;
  companion_cmd->add_option("--check", check_path, "Companion to check instead of searching (document file)");

  auto* dot_cmd = app.add_subcommand("dot", "Diagram of the input in DOT format");

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  int port = 8080;
  std::string host = "127.0.0.1";
  serve_cmd->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", host, "Bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help();
    std::cout << error_json("UsageError", e.what()).dump() << "\n";
    return kUsage;
  }

  try {
    if (*mutate_cmd) {
      if (!*at_opt && !*seq_opt) throw CLI::ValidationError("mutate", "one of --at or --seq is required");
      auto doc = load(opt);
      auto steps = parse_sequence(*at_opt ? std::to_string(at) : seq, doc.matrix.rows());
      print(opt, document_json(doc.matrix.mutate(steps), doc.name));
      return kOk;
    }
    if (*classify_cmd) {
      print(opt, classify_json(load(opt).matrix.principal()));
      return kOk;
    }
    if (*enumerate_cmd) {
      auto doc = load(opt);
      ExploreBudget b;
      b.max_nodes = budget;
      b.jobs = opt.jobs;
      const auto root = principal ? principal_extension(doc.matrix.principal()) : doc.matrix;
      auto report = explore_extended_class(root, b);
      print(opt, class_report_json(report));
      return report.outcome == ClassReport::Outcome::BudgetExhausted ? kBudget : kOk;
    }
    if (*minimal_cmd) {
      auto g = connected_principal_diagram(load(opt));
      print(opt, Json{{"minimal_infinite", is_minimal_infinite(g)}});
      return kOk;
    }
    if (*theorem_cmd) {
      auto doc = load(opt);
      connected_principal_diagram(doc);
      ExploreBudget b;
      b.max_nodes = budget;
      b.jobs = opt.jobs;
      auto report = verify_theorem(doc.matrix.principal(), b);
      print(opt, theorem_json(report));
      switch (report.verdict) {
        case TheoremReport::Verdict::Consistent: return kOk;
        case TheoremReport::Verdict::UndecidedAtBudget: return kBudget;
        case TheoremReport::Verdict::Mismatch: return kDomain;
      }
    }
    if (*catalog_cmd) {
      auto f = family_from_string(family);
      if (!f) throw CLI::ValidationError("--family", "unknown family " + family);
      const auto shape = affine ? extended_shape(*f, rank) : dynkin_shape(*f, rank);
      const auto spec = OrientationSpec::from_mask(shape.links.size(), orientation);
      const ExchangeMatrix b = affine ? extended_dynkin_matrix(*f, rank, spec) : dynkin_matrix(*f, rank, spec);
      const DynkinLabel label{*f, rank, affine};
      Json out = document_json(ExtendedMatrix(b), label.str());
      out["label"] = label_json(label);
      out["diagram"] = diagram_json(diagram_of(b));
      if (affine && *f != Family::C) {
        auto data = affine_gcm(*f, rank);
        out["gcm"] = {{"cartan", matrix_json(data.cartan)},
                      {"symmetrizer", vector_json(data.d)},
                      {"null_root", vector_json(data.u)},
                      {"odd_index", data.odd_index + 1}};
      }
      print(opt, out);
      return kOk;
    }
    if (*companion_cmd) {
      const ExchangeMatrix b = load(opt).matrix.principal();
      if (!check_path.empty()) {
        std::ifstream file(check_path);
        if (!file) throw DocumentError("cannot open " + check_path);
        Json doc;
        try {
          doc = Json::parse(read_all(file));
        } catch (const nlohmann::json::parse_error& e) {
          throw DocumentError(std::string("malformed JSON: ") + e.what());
        }
        if (!doc.is_object() || !doc.contains("rows")) throw DocumentError("missing \"rows\" array", "rows");
        const Companion c(int_matrix_from_json(doc["rows"]), b);
        const auto adm = is_admissible(c);
        Json out{{"admissible", adm.admissible}};
        if (adm.violating) out["violating_cycle"] = indices_json(adm.violating->vertices);
        out.update(companion_json(c));
        print(opt, out);
        return adm.admissible ? kOk : kDomain;
      }
      auto c = find_admissible_companion(b);
      if (!c) {
        print(opt, Json{{"admissible", false}});
        return kDomain;
      }
      Json out{{"admissible", true}};
      out.update(companion_json(*c));
      print(opt, out);
      return kOk;
    }
    if (*dot_cmd) {
      std::cout << emit_dot(diagram_of(load(opt).matrix));
      return kOk;
    }
    if (*serve_cmd) {
      Service service;
      httplib::Server server;
      bind_routes(server, service);
      std::cerr << "listening on " << host << ":" << port << "\n";
      return server.listen(host, port) ? kOk : kDomain;
    }
  } catch (const CLI::ParseError& e) {
    std::cout << error_json("UsageError", e.what()).dump() << "\n";
    return kUsage;
  } catch (const DocumentError& e) {
    std::cout << error_json("DocumentError", e.what(), e.where()).dump() << "\n";
    return kDomain;
  } catch (const FrozenIndexError& e) {
    std::cout << error_json("FrozenIndexError", e.what()).dump() << "\n";
    return kDomain;
  } catch (const NotFiniteType& e) {
    std::cout << error_json("NotFiniteType", e.what()).dump() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cout << error_json("Error", e.what()).dump() << "\n";
    return kDomain;
  }
  return kUsage;
}
