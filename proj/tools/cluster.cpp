#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <clusterkit/clusterkit.hpp>

namespace {

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : text) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ' && ch != '\t') {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"batch clustering runner: points file in, assignment rows out"};

  std::string input;
  std::string output;
  std::string algorithm;
  std::vector<std::string> params;
  std::string eval_list;
  std::uint64_t seed = 0;

  app.add_option("-i,--input", input,
                 "input points file (whitespace-separated numbers, # comments, "
                 "optional trailing labels)")
      ->required();
  app.add_option("-o,--output", output, "output file, or - for stdout")
      ->required();
  app.add_option("-a,--algorithm", algorithm,
                 "algorithm name (shorthand for --param algorithm=NAME)");
  app.add_option("--param", params, "KEY=VALUE setting, repeatable");
  auto* seed_opt = app.add_option("--seed", seed, "random seed (unsigned)");
  app.add_option("--eval", eval_list,
                 "comma-separated evaluations: sse, silhouette, "
                 "simplified_silhouette, davies_bouldin, variance_ratio");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  clusterkit::ParamSet ps;
  if (!algorithm.empty()) ps.add("algorithm", algorithm);
  for (const auto& entry : params) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --param expects KEY=VALUE, got \"" << entry << "\"\n";
      return 2;
    }
    ps.add(entry.substr(0, eq), entry.substr(eq + 1));
  }
  if (seed_opt->count() > 0) ps.add("seed", std::to_string(seed));

  try {
    const clusterkit::RunSpec spec = clusterkit::build_algorithm(ps);
    for (const auto& w : spec.warnings) std::cerr << "warning: " << w << "\n";

    const clusterkit::Dataset data = clusterkit::parse_points_file(input);
    const clusterkit::RunOutcome outcome =
        clusterkit::execute_run(spec, data, split_commas(eval_list));
    for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";

    if (output == "-") {
      std::cout << outcome.output;
      if (!std::cout) {
        std::cerr << "error: failed writing to stdout\n";
        return 2;
      }
    } else {
      std::ofstream f(output, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot open output file " << output << "\n";
        return 2;
      }
      f << outcome.output;
      f.flush();
      if (!f) {
        std::cerr << "error: failed writing output file " << output << "\n";
        return 2;
      }
    }
  } catch (const clusterkit::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
