// Command-line front end. Builds a JSON request from the parsed arguments,
// hands it to the shared library through the C interface, and renders the
// response. Exit code 0: all checks passed; 1: an identity failed; 2: bad
// configuration or input.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "hurwitz_kernel.h"

namespace {

using Json = nlohmann::ordered_json;

// Inline JSON, or @path to read a file.
Json parse_value(const std::string& text) {
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw std::runtime_error("cannot open " + text.substr(1));
    std::stringstream buf;
    buf << in.rdbuf();
    return Json::parse(buf.str());
  }
  return Json::parse(text);
}

void render_csv(const Json& response, std::ostream& os) {
  if (response.contains("report")) {
    os << "check,pass,detail\n";
    for (const Json& c : response.at("report").at("checks")) {
      std::string detail = c.value("detail", "");
      for (char& ch : detail)
        if (ch == ',' || ch == '\n') ch = ';';
      os << '"' << c.at("name").get<std::string>() << '"' << ','
         << (c.at("pass").get<bool>() ? "pass" : "FAIL") << ',' << '"' << detail
         << '"' << '\n';
    }
    return;
  }
  os << "key,value\n";
  if (response.contains("result"))
    for (const auto& [key, value] : response.at("result").items())
      os << '"' << key << '"' << ',' << '"' << value.dump() << '"' << '\n';
}

void render_pretty(const Json& response, std::ostream& os) {
  if (response.contains("report")) {
    const Json& report = response.at("report");
    for (const Json& c : report.at("checks")) {
      os << (c.at("pass").get<bool>() ? "[PASS] " : "[FAIL] ")
         << c.at("name").get<std::string>();
      std::string detail = c.value("detail", "");
      if (!detail.empty()) os << "  (" << detail << ")";
      os << '\n';
    }
    os << report.at("passed").get<int>() << " passed, "
       << report.at("failed").get<int>() << " failed\n";
    return;
  }
  if (response.contains("result")) {
    os << response.at("result").dump(2) << '\n';
    return;
  }
  os << response.dump(2) << '\n';
}

struct Common {
  std::string format = "pretty";
  uint64_t seed = 1;
  bool seed_set = false;
  int bound = -1;
  int level = -1;
  int trials = -1;
  std::string lambda, ctx, instance;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "output format: json, csv or pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  cmd->add_option("--seed", c.seed, "seed for randomized trials")
      ->each([&](const std::string&) { c.seed_set = true; });
  cmd->add_option("--bound", c.bound, "size bound for enumerated instances");
  cmd->add_option("--level", c.level, "series truncation level");
  cmd->add_option("--trials", c.trials, "random pairs per cell");
  cmd->add_option("--lambda", c.lambda, "weight scalar, e.g. 1/2");
  cmd->add_option("--ctx", c.ctx, "coefficient context: rat, mat2, poly3");
  cmd->add_option("--instance", c.instance,
                  "base category: fi_sharp, fo_sharp, cube, simplicial");
}

Json common_options(const Common& c) {
  Json options = Json::object();
  if (c.seed_set) options["seed"] = c.seed;
  if (c.bound >= 0) options["bound"] = c.bound;
  if (c.level >= 0) options["level"] = c.level;
  if (c.trials >= 0) options["trials"] = c.trials;
  if (!c.lambda.empty()) options["lambda"] = c.lambda;
  if (!c.ctx.empty()) options["ctx"] = c.ctx;
  if (!c.instance.empty()) options["instance"] = c.instance;
  return options;
}

int run_and_render(const Json& request, const std::string& format) {
  hk_session* session = hk_session_new();
  if (session == nullptr) {
    std::cerr << "error: cannot create session\n";
    return HK_INTERNAL_ERROR;
  }
  char* response_text = nullptr;
  int status = hk_run(session, request.dump().c_str(), &response_text);
  if (response_text == nullptr) {
    std::cerr << "error: " << hk_last_error(session) << '\n';
    hk_session_free(session);
    return status;
  }
  Json response = Json::parse(response_text);
  hk_buffer_free(response_text);
  hk_session_free(session);
  if (format == "json")
    std::cout << response.dump(2) << '\n';
  else if (format == "csv")
    render_csv(response, std::cout);
  else
    render_pretty(response, std::cout);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact kernel for weighted series products, their coalgebras, "
               "species tensors, and normalization equivalences"};
  app.require_subcommand(1);

  struct Pending {
    Json request;
    std::string format;
  };
  Pending pending;

  // verify <suite>
  {
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    static Common c;
    static std::string suite;
    verify->add_option("suite", suite,
                       "hurwitz, interp, rotabaxter, comonad, coalgebra, "
                       "species, doldkan, bridge or all")
        ->required();
    add_common(verify, c);
    verify->callback([&] {
      pending = {Json{{"command", "verify"},
                      {"suite", suite},
                      {"options", common_options(c)}},
                 c.format};
    });
  }

  // hurwitz mul|transform|verify
  {
    auto* hurwitz = app.add_subcommand("hurwitz", "weighted series products");
    static Common c;
    static std::string action, a_text, b_text, map_name;
    hurwitz->add_option("action", action, "mul, transform or verify")
        ->required()
        ->check(CLI::IsMember({"mul", "transform", "verify"}));
    hurwitz->add_option("--a", a_text, "series JSON or @file");
    hurwitz->add_option("--b", b_text, "series JSON or @file");
    hurwitz->add_option("--map", map_name,
                        "power_scale, binomial, binomial_inverse or "
                        "weighted_binomial");
    add_common(hurwitz, c);
    hurwitz->callback([&] {
      Json options = common_options(c);
      if (!map_name.empty()) options["map"] = map_name;
      Json inputs = Json::object();
      if (!a_text.empty()) inputs["a"] = parse_value(a_text);
      if (!b_text.empty()) inputs["b"] = parse_value(b_text);
      pending = {Json{{"command", "hurwitz"},
                      {"action", action},
                      {"options", options},
                      {"inputs", inputs}},
                 c.format};
    });
  }

  // interp psi|phi|check-triangle
  {
    auto* interp = app.add_subcommand("interp", "falling-factorial residues");
    static Common c;
    static std::string action, a_text, f_text;
    interp->add_option("action", action, "psi, phi or check-triangle")
        ->required()
        ->check(CLI::IsMember({"psi", "phi", "check-triangle"}));
    interp->add_option("--a", a_text, "series JSON or @file");
    interp->add_option("--f", f_text, "residue JSON or @file");
    add_common(interp, c);
    interp->callback([&] {
      Json inputs = Json::object();
      if (!a_text.empty()) inputs["a"] = parse_value(a_text);
      if (!f_text.empty()) inputs["f"] = parse_value(f_text);
      pending = {Json{{"command", "interp"},
                      {"action", action},
                      {"options", common_options(c)},
                      {"inputs", inputs}},
                 c.format};
    });
  }

  // coalg show|quotient|convolve|classify
  {
    auto* coalg = app.add_subcommand("coalg", "coalgebras by structure constants");
    static Common c;
    static std::string action, family, input_text;
    static int ell = 2, subset_n = 3;
    coalg->add_option("action", action, "show, quotient, convolve or classify")
        ->required()
        ->check(CLI::IsMember({"show", "quotient", "convolve", "classify"}));
    coalg->add_option("--family", family,
                      "weighted, diagonal, weighted_quotient, "
                      "diagonal_quotient or subset");
    coalg->add_option("--ell", ell, "quotient power / level");
    coalg->add_option("--n", subset_n, "ground-set size for subset coalgebras");
    coalg->add_option("--input", input_text, "coalgebra JSON or @file");
    add_common(coalg, c);
    coalg->callback([&] {
      Json options = common_options(c);
      if (!family.empty()) options["family"] = family;
      options["ell"] = ell;
      options["n"] = subset_n;
      Json inputs = Json::object();
      if (!input_text.empty()) inputs["coalgebra"] = parse_value(input_text);
      pending = {Json{{"command", "coalg"},
                      {"action", action},
                      {"options", options},
                      {"inputs", inputs}},
                 c.format};
    });
  }

  // species tensor|transform|character|ranks
  {
    auto* species = app.add_subcommand("species", "linear species with actions");
    static Common c;
    static std::string action, m_name, n_name, m_text, n_text, perm;
    static int weight = 1, degree = 0;
    static bool as_printed = false;
    species
        ->add_option("action", action, "tensor, transform, character or ranks")
        ->required()
        ->check(CLI::IsMember({"tensor", "transform", "character", "ranks"}));
    species->add_option("--m", m_name, "catalog name: unit, exp, sign, x, random");
    species->add_option("--n-species", n_name, "catalog name for the right factor");
    species->add_option("--m-json", m_text, "species JSON or @file");
    species->add_option("--n-json", n_text, "species JSON or @file");
    species->add_option("--weight", weight, "weight object rank g");
    species->add_option("--degree", degree, "cardinality for characters");
    species->add_option("--perm", perm, "permutation images, e.g. 2,1,3");
    species->add_flag("--as-printed", as_printed,
                      "also emit the alternative sequence convention");
    add_common(species, c);
    species->callback([&] {
      Json options = common_options(c);
      if (!m_name.empty()) options["m"] = m_name;
      if (!n_name.empty()) options["second"] = n_name;
      options["weight"] = weight;
      options["degree"] = degree;
      if (!perm.empty()) options["perm"] = perm;
      if (as_printed) options["as_printed"] = true;
      Json inputs = Json::object();
      if (!m_text.empty()) inputs["m"] = parse_value(m_text);
      if (!n_text.empty()) inputs["n"] = parse_value(n_text);
      pending = {Json{{"command", "species"},
                      {"action", action},
                      {"options", options},
                      {"inputs", inputs}},
                 c.format};
    });
  }

  // doldkan gamma|n|tensor|roundtrip
  {
    auto* doldkan = app.add_subcommand(
        "doldkan", "normalization equivalences and transported tensors");
    static Common c;
    static std::string action, f_text, g_text, f_ranks, g_ranks;
    doldkan->add_option("action", action, "gamma, n, tensor or roundtrip")
        ->required()
        ->check(CLI::IsMember({"gamma", "n", "tensor", "roundtrip"}));
    doldkan->add_option("--f", f_text, "presheaf JSON or @file");
    doldkan->add_option("--g", g_text, "presheaf JSON or @file");
    doldkan->add_option("--f-ranks", f_ranks,
                        "comma-separated ranks for a trivial-action presheaf");
    doldkan->add_option("--g-ranks", g_ranks,
                        "comma-separated ranks for a trivial-action presheaf");
    add_common(doldkan, c);
    doldkan->callback([&] {
      Json options = common_options(c);
      auto ranks_list = [](const std::string& text) {
        Json arr = Json::array();
        size_t pos = 0;
        while (pos < text.size()) {
          size_t comma = text.find(',', pos);
          if (comma == std::string::npos) comma = text.size();
          arr.push_back(std::stoi(text.substr(pos, comma - pos)));
          pos = comma + 1;
        }
        return arr;
      };
      if (!f_ranks.empty()) options["f_ranks"] = ranks_list(f_ranks);
      if (!g_ranks.empty()) options["g_ranks"] = ranks_list(g_ranks);
      Json inputs = Json::object();
      if (!f_text.empty()) inputs["f"] = parse_value(f_text);
      if (!g_text.empty()) inputs["g"] = parse_value(g_text);
      pending = {Json{{"command", "doldkan"},
                      {"action", action},
                      {"options", options},
                      {"inputs", inputs}},
                 c.format};
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : HK_BAD_REQUEST;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return HK_BAD_REQUEST;
  }

  try {
    return run_and_render(pending.request, pending.format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return HK_INTERNAL_ERROR;
  }
}
