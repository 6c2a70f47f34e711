#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "rcloop/error.hpp"
#include "rcloop_cli/cli.hpp"

namespace rcloop::cli {

namespace fs = std::filesystem;

void write_artifacts(const fs::path& dir, const std::vector<Artifact>& artifacts) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<fs::path> temps, done;
  auto cleanup = [&] {
    std::error_code ignore;
    for (const auto& p : temps) fs::remove(p, ignore);
    for (const auto& p : done) fs::remove(p, ignore);
  };
  for (const auto& a : artifacts) {
    fs::path tmp = dir / (a.name + ".tmp");
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << a.content;
    out.close();
    if (!out) {
      cleanup();
      throw IoError("cannot write " + tmp.string());
    }
  }
  for (std::size_t i = 0; i < artifacts.size(); ++i) {
    fs::path final_path = dir / artifacts[i].name;
    fs::rename(temps[i], final_path, ec);
    if (ec) {
      cleanup();
      throw IoError("cannot rename to " + final_path.string() + ": " + ec.message());
    }
    done.push_back(final_path);
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Loop decompositions, explorations and crossing experiments on the square lattice", "rcloop-cli"};
  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Base seed (overrides the config)");
  auto* threads_opt = app.add_option("--threads", threads, "Worker threads, 0 = all cores (overrides the config)");
  auto* out_opt = app.add_option("--out", out_dir, "Output directory (overrides the config)");
  app.add_option("--config", config_path, "Run config (JSON)")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  json raw;
  {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      err << "error: cannot read config " << config_path << "\n";
      return kIo;
    }
    try {
      raw = json::parse(in);
    } catch (const json::parse_error& e) {
      err << "error: malformed JSON in " << config_path << ": " << e.what() << "\n";
      return kUsage;
    }
  }
  if (raw.is_object()) {
    if (*seed_opt) raw["seed"] = seed;
    if (*threads_opt) raw["threads"] = threads;
    if (*out_opt) raw["out"] = out_dir;
  }
  try {
    json resolved = resolve_config(raw);
    if (raw.contains("threads")) threads = raw["threads"].get<unsigned>();
    fs::path dir = raw.contains("out") ? fs::path(raw["out"].get<std::string>()) : fs::path(".");
    auto artifacts = execute(resolved, threads, fs::path(config_path).parent_path());
    write_artifacts(dir, artifacts);
    for (const auto& a : artifacts) out << (dir / a.name).string() << "\n";
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const rcloop::InvariantError& e) {
    err << "invariant violated: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInvariant;
  }
}

}  // namespace rcloop::cli
