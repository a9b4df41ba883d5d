// Command-line surface for the up/down operator algebra library.
//
// Exit codes: 0 success / semantic true, 1 semantic false / failed
// verification, 2 usage or parse errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "updown/updown.hpp"

namespace {

using nlohmann::ordered_json;

std::string partition_text(const std::optional<updown::Partition>& p) {
  return p ? updown::to_string(*p) : "0";
}

ordered_json sparse_to_json(const updown::SparseVec& v) {
  ordered_json j = ordered_json::object();
  for (const auto& [i, val] : v) j[std::to_string(i)] = val;
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << content << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw updown::ParseError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(is),
                     std::istreambuf_iterator<char>());
}

void emit(const ordered_json& j, const std::string& text, bool json_mode) {
  if (json_mode)
    std::cout << j.dump() << '\n';
  else
    std::cout << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Up- and down-operator algebra on Young's lattice"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --json appear after the subcommand as well

  bool json_mode = false;
  app.add_flag("--json", json_mode, "machine-readable JSON output");

  std::string word_text, partition_text_in, x_text, y_text, trace_file;
  int t = 2, rho = 0, pos = 0;
  bool annihilates = false;

  auto* act = app.add_subcommand("act", "apply a word to a partition");
  act->add_option("--word", word_text)->required();
  act->add_option("--partition", partition_text_in)->required();

  auto* fp_cmd = app.add_subcommand("fingerprint", "weight and alpha vectors of a word");
  fp_cmd->add_option("--word", word_text)->required();

  auto* equiv = app.add_subcommand("equiv", "decide equivalence by fingerprint");
  equiv->add_option("--x", x_text)->required();
  equiv->add_option("--y", y_text)->required();

  auto* normalize = app.add_subcommand("normalize", "canonical word, optionally with certificate");
  normalize->add_option("--word", word_text)->required();
  normalize->add_option("--trace", trace_file);

  auto* certify = app.add_subcommand("certify", "write a verified equivalence certificate");
  certify->add_option("--x", x_text)->required();
  certify->add_option("--y", y_text)->required();
  certify->add_option("--trace", trace_file)->required();

  auto* verify = app.add_subcommand("verify-trace", "check a certificate file");
  verify->add_option("--file", trace_file)->required();

  auto* chain = app.add_subcommand("chain", "action on a finite chain");
  chain->add_option("--t", t)->required();
  chain->add_option("--rho", rho)->required();
  chain->add_option("--word", word_text)->required();
  chain->add_option("--pos", pos);
  chain->add_flag("--annihilates", annihilates);

  auto* graph = app.add_subcommand("graph", "lattice path of a {t, t-bar}-word");
  graph->add_option("--t", t)->required();
  graph->add_option("--word", word_text)->required();

  auto* oracle = app.add_subcommand("oracle-check", "brute-force action comparison");
  oracle->add_option("--x", x_text)->required();
  oracle->add_option("--y", y_text)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*act) {
      const updown::Word w = updown::parse_word(word_text);
      const updown::Partition p = updown::parse_partition(partition_text_in);
      const auto result = updown::apply_word(p, w);
      ordered_json j;
      j["result"] = result ? ordered_json(updown::to_string(*result)) : ordered_json(nullptr);
      emit(j, partition_text(result), json_mode);
      return 0;
    }

    if (*fp_cmd) {
      const updown::Fingerprint fp = updown::fingerprint(updown::parse_word(word_text));
      ordered_json j;
      j["w"] = sparse_to_json(fp.weight);
      j["alpha"] = sparse_to_json(fp.alpha);
      emit(j, updown::to_string(fp), json_mode);
      return 0;
    }

    if (*equiv) {
      const bool eq = updown::equivalent(updown::parse_word(x_text),
                                         updown::parse_word(y_text));
      ordered_json j;
      j["equivalent"] = eq;
      emit(j, eq ? "equivalent" : "not-equivalent", json_mode);
      return eq ? 0 : 1;
    }

    if (*normalize) {
      const updown::Word x = updown::parse_word(word_text);
      const updown::NormalizationParams p = updown::normalization_params(x);
      auto [canonical, trace] = updown::normalize_with_trace(x);
      if (!trace_file.empty())
        write_file(trace_file, updown::trace_to_string(trace));
      ordered_json j;
      j["canonical"] = updown::to_string(canonical);
      j["m"] = p.m;
      j["n"] = p.n;
      j["steps"] = trace.steps.size();
      if (!trace_file.empty()) j["trace_file"] = trace_file;
      emit(j, updown::to_string(canonical), json_mode);
      return 0;
    }

    if (*certify) {
      const updown::Word x = updown::parse_word(x_text);
      const updown::Word y = updown::parse_word(y_text);
      const auto trace = updown::certify_equivalence(x, y);
      ordered_json j;
      j["equivalent"] = bool(trace);
      if (!trace) {
        emit(j, "not-equivalent", json_mode);
        return 1;
      }
      const updown::VerifyResult vr = updown::verify_trace(*trace);
      if (!vr) throw std::logic_error("emitted certificate failed verification: " + vr.error);
      write_file(trace_file, updown::trace_to_string(*trace));
      j["steps"] = trace->steps.size();
      j["trace_file"] = trace_file;
      emit(j, "equivalent", json_mode);
      return 0;
    }

    if (*verify) {
      const updown::Trace tr = updown::trace_from_string(read_file(trace_file));
      const updown::VerifyResult vr = updown::verify_trace(tr);
      ordered_json j;
      j["ok"] = vr.ok;
      if (!vr.ok) {
        j["error"] = vr.error;
        if (vr.failed_step) j["step"] = *vr.failed_step;
        emit(j, "invalid: " + vr.error, json_mode);
        return 1;
      }
      emit(j, "ok", json_mode);
      return 0;
    }

    if (*chain) {
      const updown::Word w = updown::parse_word(word_text);
      if (annihilates) {
        const bool ann = updown::chain_annihilates(w, t, rho);
        ordered_json j;
        j["annihilates"] = ann;
        emit(j, ann ? "yes" : "no", json_mode);
        return ann ? 0 : 1;
      }
      const auto out = updown::chain_apply(updown::ChainState{rho, pos}, w, t);
      ordered_json j;
      j["zero"] = !out;
      if (out) j["pos"] = out->pos;
      emit(j, out ? std::to_string(out->pos) : "0", json_mode);
      return 0;
    }

    if (*graph) {
      const updown::Word w = updown::parse_word(word_text);
      const updown::StepGraph g = updown::step_graph(w, t);
      const updown::TWordStats s = updown::t_stats(w, t);
      ordered_json j;
      j["points"] = ordered_json::array();
      std::ostringstream text;
      for (const auto& [px, py] : g.points) {
        j["points"].push_back({px, py});
        text << '(' << px << ", " << py << ")\n";
      }
      j["peak"] = s.peak;
      j["valley"] = s.valley;
      j["endpoint"] = s.endpoint;
      j["alpha_t_minus_1"] = s.peak;
      j["alpha_t"] = -s.valley;
      j["w_t"] = s.endpoint;
      text << "peak=" << s.peak << " valley=" << s.valley
           << " endpoint=" << s.endpoint << " alpha[t-1]=" << s.peak
           << " alpha[t]=" << -s.valley << " w[t]=" << s.endpoint;
      emit(j, text.str(), json_mode);
      return 0;
    }

    if (*oracle) {
      const updown::Word x = updown::parse_word(x_text);
      const updown::Word y = updown::parse_word(y_text);
      const updown::OracleParams op = updown::oracle_params(x, y);
      const bool eq = updown::semantically_equal(x, y);
      ordered_json j;
      j["equal"] = eq;
      j["profile_columns"] = op.n;
      j["profile_max_difference"] = op.c;
      emit(j, eq ? "equal" : "not-equal", json_mode);
      return eq ? 0 : 1;
    }
  } catch (const updown::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
