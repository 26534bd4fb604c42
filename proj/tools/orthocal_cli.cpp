// Command-line front end. Talks to the library exclusively through orthocal.h.

#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "orthocal.h"

namespace {

struct ConfigDeleter {
  void operator()(orthocal_config* c) const { orthocal_config_free(c); }
};
struct ReportDeleter {
  void operator()(orthocal_report* r) const { orthocal_report_free(r); }
};
using ConfigPtr = std::unique_ptr<orthocal_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<orthocal_report, ReportDeleter>;

struct Options {
  std::string config_path;
  std::string in_path;
  std::string out_path;
  std::string form;
  std::string seed;
  std::string trials;
  std::string tolerance;
};

int report_failure(const char* what, orthocal_status status) {
  std::fprintf(stderr, "orthocal %s: %s: %s\n", what, orthocal_status_name(status),
               orthocal_last_error());
  return orthocal_exit_code(status);
}

// Loads the config file (or defaults) and applies command-line overrides.
orthocal_status build_config(const Options& opt, ConfigPtr& out) {
  orthocal_config* raw = nullptr;
  orthocal_status st = opt.config_path.empty() ? orthocal_config_create(&raw)
                                               : orthocal_config_load(opt.config_path.c_str(), &raw);
  out.reset(raw);
  if (st != ORTHOCAL_OK) return st;

  const std::pair<const char*, const std::string*> overrides[] = {
      {"in", &opt.in_path},       {"out", &opt.out_path}, {"form", &opt.form},
      {"seed", &opt.seed},        {"trials", &opt.trials}, {"tolerance_mm", &opt.tolerance},
  };
  for (const auto& [key, value] : overrides) {
    if (value->empty()) continue;
    st = orthocal_config_set(out.get(), key, value->c_str());
    if (st != ORTHOCAL_OK) return st;
  }
  return orthocal_config_validate(out.get());
}

std::string config_string(const orthocal_config* c, const char* key) {
  const char* v = nullptr;
  return orthocal_config_get_string(c, key, &v) == ORTHOCAL_OK && v ? v : "";
}

orthocal_form config_form(const orthocal_config* c) {
  int64_t v = ORTHOCAL_FORM_REDUCED;
  orthocal_config_get_int(c, "form", &v);
  return static_cast<orthocal_form>(v);
}

int finish(const char* what, orthocal_status st, orthocal_report* raw, const std::string& json_out,
           bool fail_on_mismatch) {
  ReportPtr report(raw);
  if (st != ORTHOCAL_OK) return report_failure(what, st);
  std::fputs(orthocal_report_text(report.get()), stdout);
  if (!json_out.empty()) {
    st = orthocal_report_write(report.get(), json_out.c_str());
    if (st != ORTHOCAL_OK) return report_failure(what, st);
  }
  return fail_on_mismatch && !orthocal_report_passed(report.get()) ? 1 : 0;
}

int cmd_simulate(const Options& opt) {
  ConfigPtr cfg;
  if (auto st = build_config(opt, cfg); st != ORTHOCAL_OK) return report_failure("simulate", st);
  const std::string out = config_string(cfg.get(), "out");
  if (out.empty()) {
    std::fprintf(stderr, "orthocal simulate: --out PATH is required\n");
    return 2;
  }
  if (auto st = orthocal_simulate(cfg.get(), config_form(cfg.get()), out.c_str()); st != ORTHOCAL_OK) {
    return report_failure("simulate", st);
  }
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_identify(const Options& opt) {
  ConfigPtr cfg;
  if (auto st = build_config(opt, cfg); st != ORTHOCAL_OK) return report_failure("identify", st);
  const std::string in = config_string(cfg.get(), "in");
  if (in.empty()) {
    std::fprintf(stderr, "orthocal identify: --in PATH is required\n");
    return 2;
  }
  // Without --form the file header decides.
  const orthocal_form form = opt.form.empty() ? ORTHOCAL_FORM_AUTO : config_form(cfg.get());
  orthocal_report* report = nullptr;
  const auto st = orthocal_identify_file(cfg.get(), in.c_str(), form, &report);
  return finish("identify", st, report, config_string(cfg.get(), "out"), false);
}

int cmd_table1(const Options& opt) {
  ConfigPtr cfg;
  if (auto st = build_config(opt, cfg); st != ORTHOCAL_OK) return report_failure("table1", st);
  double tolerance = 0.03;
  orthocal_config_get_double(cfg.get(), "tolerance_mm", &tolerance);
  orthocal_report* report = nullptr;
  const auto st = orthocal_table1(cfg.get(), tolerance, &report);
  return finish("table1", st, report, config_string(cfg.get(), "out"), true);
}

int cmd_montecarlo(const Options& opt) {
  ConfigPtr cfg;
  if (auto st = build_config(opt, cfg); st != ORTHOCAL_OK) return report_failure("montecarlo", st);
  int64_t trials = 1000;
  orthocal_config_get_int(cfg.get(), "trials", &trials);
  const std::string out = config_string(cfg.get(), "out");
  orthocal_report* report = nullptr;
  const auto st = orthocal_montecarlo(cfg.get(), static_cast<int>(trials), config_form(cfg.get()),
                                      out.empty() ? nullptr : out.c_str(), &report);
  return finish("montecarlo", st, report, {}, false);
}

int cmd_selftest(const Options& opt) {
  orthocal_report* report = nullptr;
  const auto st = orthocal_selftest(&report);
  return finish("selftest", st, report, opt.out_path, true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint-offset calibration of Orthoglide-type mechanisms from leg-parallelism gauges"};
  app.require_subcommand(1);
  app.set_version_flag("--version", orthocal_version());

  Options opt;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "key=value config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "random seed (overrides config)");
  };

  auto* simulate = app.add_subcommand("simulate", "run the virtual gauge protocol, write a measurement CSV");
  add_common(simulate);
  simulate->add_option("--out", opt.out_path, "measurement CSV to write");
  simulate->add_option("--form", opt.form, "full|reduced")->check(CLI::IsMember({"full", "reduced"}));

  auto* identify = app.add_subcommand("identify", "estimate joint offsets from a measurement CSV");
  add_common(identify);
  identify->add_option("--in", opt.in_path, "measurement CSV");
  identify->add_option("--out", opt.out_path, "JSON report to write");
  identify->add_option("--form", opt.form, "full|reduced (default: from header)")
      ->check(CLI::IsMember({"full", "reduced"}));

  auto* table1 = app.add_subcommand("table1", "reproduce the published prototype experiments");
  add_common(table1);
  table1->add_option("--out", opt.out_path, "JSON report to write");
  table1->add_option("--tolerance", opt.tolerance, "rms comparison tolerance, mm");

  auto* montecarlo = app.add_subcommand("montecarlo", "repeat simulate + identify with fresh noise");
  add_common(montecarlo);
  montecarlo->add_option("--trials", opt.trials, "number of trials");
  montecarlo->add_option("--out", opt.out_path, "per-trial CSV to write");
  montecarlo->add_option("--form", opt.form, "full|reduced")->check(CLI::IsMember({"full", "reduced"}));

  auto* selftest = app.add_subcommand("selftest", "run built-in consistency checks");
  selftest->add_option("--out", opt.out_path, "JSON report to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (simulate->parsed()) return cmd_simulate(opt);
  if (identify->parsed()) return cmd_identify(opt);
  if (table1->parsed()) return cmd_table1(opt);
  if (montecarlo->parsed()) return cmd_montecarlo(opt);
  if (selftest->parsed()) return cmd_selftest(opt);
  return 2;
}
