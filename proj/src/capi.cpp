#include "dpp.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "runner.hpp"
#include "scenario.hpp"

struct dpp_session {
  std::string report;
  std::string error;
};

namespace {

int apply_overrides(dpp::Scenario& sc, const char* overrides_json,
                    std::string& error) {
  if (!overrides_json || !*overrides_json) return DPP_OK;
  nlohmann::json ov;
  try {
    ov = nlohmann::json::parse(overrides_json);
  } catch (const nlohmann::json::parse_error& e) {
    error = std::string("malformed overrides: ") + e.what();
    return DPP_INPUT_ERROR;
  }
  if (!ov.is_object()) {
    error = "overrides must be a JSON object";
    return DPP_INPUT_ERROR;
  }
  for (auto it = ov.begin(); it != ov.end(); ++it) {
    const std::string& key = it.key();
    if (key == "seed" && it.value().is_number_integer()) {
      sc.seed = it.value().get<std::uint64_t>();
    } else if (key == "levels" && it.value().is_number_integer()) {
      sc.levels = it.value().get<int>();
    } else if (key == "suites" && it.value().is_array()) {
      sc.suites.clear();
      for (const auto& v : it.value()) {
        const std::string name = v.is_string() ? v.get<std::string>() : "";
        if (name == "uniqueness")
          sc.suites.push_back(dpp::Suite::Uniqueness);
        else if (name == "reciprocity")
          sc.suites.push_back(dpp::Suite::Reciprocity);
        else if (name == "variational")
          sc.suites.push_back(dpp::Suite::Variational);
        else if (name == "convergence")
          sc.suites.push_back(dpp::Suite::Convergence);
        else {
          error = "unknown suite '" + name + "' in overrides";
          return DPP_INPUT_ERROR;
        }
      }
    } else {
      error = "unknown or ill-typed override '" + key + "'";
      return DPP_INPUT_ERROR;
    }
  }
  return DPP_OK;
}

int run_impl(dpp_session* session, const std::string& text,
             const char* overrides_json, const char* out_dir) {
  session->report.clear();
  session->error.clear();

  dpp::Scenario sc;
  try {
    sc = dpp::parse_scenario(text);
  } catch (const dpp::ScenarioError& e) {
    session->error = e.what();
    nlohmann::json err = {{"pass", false}, {"errors", e.errors()}};
    session->report = dpp::dump_json(err);
    return DPP_INPUT_ERROR;
  }
  if (int rc = apply_overrides(sc, overrides_json, session->error); rc != DPP_OK)
    return rc;

  dpp::RunReport rr;
  try {
    rr = dpp::run_scenario(sc);
  } catch (const std::exception& e) {
    session->error = e.what();
    nlohmann::json err = {{"pass", false}, {"error", session->error}};
    session->report = dpp::dump_json(err);
    return DPP_NUMERICAL_ERROR;
  }
  session->report = rr.files.at("report.json");
  if (rr.report.contains("error"))
    session->error = rr.report["error"].get<std::string>();
  else if (rr.exit_code == DPP_SUITE_FAILURE)
    session->error = "one or more suites failed";

  if (out_dir && *out_dir) {
    try {
      for (const auto& [rel, content] : rr.files)
        dpp::write_text_file((std::filesystem::path(out_dir) / rel).string(),
                             content);
    } catch (const std::exception& e) {
      session->error = e.what();
      return DPP_INPUT_ERROR;
    }
  }
  return rr.exit_code;
}

}  // namespace

extern "C" {

dpp_session* dpp_session_create(void) { return new dpp_session; }

void dpp_session_destroy(dpp_session* session) { delete session; }

int dpp_run_scenario_text(dpp_session* session, const char* scenario_json,
                          const char* overrides_json, const char* out_dir) {
  if (!session) return DPP_INPUT_ERROR;
  if (!scenario_json) {
    session->error = "scenario text is null";
    return DPP_INPUT_ERROR;
  }
  return run_impl(session, scenario_json, overrides_json, out_dir);
}

int dpp_run_scenario_file(dpp_session* session, const char* path,
                          const char* overrides_json, const char* out_dir) {
  if (!session) return DPP_INPUT_ERROR;
  if (!path) {
    session->error = "scenario path is null";
    return DPP_INPUT_ERROR;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    session->error = std::string("cannot read ") + path;
    return DPP_INPUT_ERROR;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return run_impl(session, text.str(), overrides_json, out_dir);
}

const char* dpp_report_json(const dpp_session* session) {
  return session ? session->report.c_str() : "";
}

const char* dpp_last_error(const dpp_session* session) {
  return session ? session->error.c_str() : "";
}

const char* dpp_version(void) { return dpp::kVersion; }

}  // extern "C"
