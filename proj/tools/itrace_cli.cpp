#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "itrace/itrace.hpp"
#include "itrace/server.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw itrace::NotFound("file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw itrace::InvalidArgument("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"itrace: cross-view relationship tracing engine"};
  app.require_subcommand(1);

  itrace::GenSpec spec;
  std::string density = "low";
  std::string bundling = "off";
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Generate a synthetic study dataset");
  gen->add_option("--seed", spec.seed, "RNG seed")->required();
  gen->add_option("--density", density, "low (10%) or high (20%)")->check(CLI::IsMember({"low", "high"}));
  gen->add_option("--bundling", bundling, "on or off")->check(CLI::IsMember({"on", "off"}));
  gen->add_option("--out", gen_out, "Output dataset file")->required();
  gen->add_option("--entities", spec.entities_per_type, "Entities per type");

  std::string data, script, log_out, metrics_out, snapshot_out, checkpoints_out;
  std::size_t every = 0;
  auto* rep = app.add_subcommand("replay", "Replay a command script headlessly");
  rep->add_option("--data", data, "Dataset file")->required();
  rep->add_option("--script", script, "Command script (NDJSON or JSON array)")->required();
  rep->add_option("--log", log_out, "Interaction log output (NDJSON)");
  rep->add_option("--metrics", metrics_out, "Metrics output (JSON)");
  rep->add_option("--snapshot", snapshot_out, "Final snapshot output (JSON)");
  rep->add_option("--checkpoints", checkpoints_out, "Checkpoint snapshots output (NDJSON)");
  rep->add_option("--every", every, "Emit a checkpoint every N commands");

  std::string claim;
  auto* ver = app.add_subcommand("verify", "Check a reported finding against the dataset");
  ver->add_option("--data", data, "Dataset file")->required();
  ver->add_option("--claim", claim, "Claim file")->required();

  int port = 8765;
  std::string host = "127.0.0.1";
  auto* srv = app.add_subcommand("serve", "Serve the engine protocol over local HTTP");
  srv->add_option("--data", data, "Dataset file")->required();
  srv->add_option("--port", port, "Port");
  srv->add_option("--host", host, "Bind address");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      spec.density = itrace::parse_density(density);
      spec.bundling = bundling == "on";
      const auto result = itrace::generate(spec);
      write_file(gen_out, result.document.dump(1) + "\n");
      write_file(gen_out + ".meta.json", itrace::generation_meta(spec, result.meta).dump(1) + "\n");
      std::cout << "wrote " << gen_out << " (" << result.meta.bicluster_count << " bi-groups, "
                << result.meta.retry_count << " retries)\n";
      return 0;
    }
    if (*rep) {
      itrace::ReplayOptions options;
      options.checkpoint_every = every;
      const auto result = itrace::replay(itrace::read_dataset(data), itrace::parse_script(read_file(script)), options);
      if (!log_out.empty()) write_file(log_out, itrace::log_text(result.log));
      if (!metrics_out.empty()) write_file(metrics_out, itrace::metrics_json(result.metrics).dump(1) + "\n");
      if (!snapshot_out.empty()) write_file(snapshot_out, result.final_snapshot.dump(1) + "\n");
      if (!checkpoints_out.empty()) {
        std::string text;
        for (const auto& c : result.checkpoints) text += c.dump() + "\n";
        write_file(checkpoints_out, text);
      }
      if (metrics_out.empty()) std::cout << itrace::metrics_json(result.metrics).dump(1) << "\n";
      return 0;
    }
    if (*ver) {
      const auto ds = itrace::read_dataset(data);
      const auto c = itrace::parse_claim(itrace::Json::parse(read_file(claim)));
      const bool ok = itrace::verify_finding(ds.graph, c);
      std::cout << (ok ? "correct" : "incorrect") << "\n";
      return ok ? 0 : 2;
    }
    if (*srv) {
      itrace::EngineServer server(itrace::read_dataset(data));
      if (!server.bind(host, port)) throw itrace::InvalidArgument("cannot bind " + host + ":" + std::to_string(port));
      std::cout << "serving on http://" << host << ":" << port << "\n" << std::flush;
      return server.listen() ? 0 : 1;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}
