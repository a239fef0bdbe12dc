// Command-line front end. Composition is left to right: `compose a b` applies a first.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "thompson/certificate.hpp"
#include "thompson/sampling.hpp"

namespace th = thompson;

namespace {

enum Exit { kOk = 0, kFailure = 1, kInconclusive = 2 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

th::TreeDiagram load_element(const std::string& arg) {
  if (!std::filesystem::exists(arg)) {
    if (arg == "id") return th::identity();
    if (arg == "x0") return th::x0();
    if (arg == "x1") return th::x1();
  }
  try {
    return th::TreeDiagram::parse(read_file(arg));
  } catch (const th::ParseError& e) {
    throw std::runtime_error(arg + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write '" + out + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations and certificates for Thompson's groups F, T and V.\n"
               "Elements are files of 'u -> v' lines or the built-ins id, x0, x1.\n"
               "Products compose left to right."};
  app.require_subcommand(1);

  std::string file, out;
  std::vector<std::string> files, points;

  auto* normalize = app.add_subcommand("normalize", "print the reduced branch table");
  normalize->add_option("element", file, "element file or built-in")->required();

  auto* compose = app.add_subcommand("compose", "multiply elements left to right");
  compose->add_option("elements", files, "element files or built-ins")->required();

  auto* evaluate = app.add_subcommand("evaluate", "map dyadic points p/2^q");
  evaluate->add_option("element", file, "element file or built-in")->required();
  evaluate->add_option("points", points, "points")->required();

  std::string h_arg, g_arg;
  std::size_t random_count = 0, max_leaves = 10;
  std::uint64_t seed = 1;
  auto* certf = app.add_subcommand("cert-f", "generation certificate for {x0, x1^h, (x0 x1)^g}");
  certf->set_help_flag("--help", "print this help message and exit");
  auto* h_opt = certf->add_option("--h", h_arg, "conjugator of x1");
  auto* g_opt = certf->add_option("--g", g_arg, "conjugator of x0 x1");
  auto* r_opt = certf->add_option("--random", random_count, "emit a suite of N random certificates");
  certf->add_option("--seed", seed, "seed for --random");
  certf->add_option("--max-leaves", max_leaves, "leaf bound for random conjugators");
  certf->add_option("--out", out, "output file (default stdout)");
  h_opt->needs(g_opt);
  g_opt->needs(h_opt);
  r_opt->excludes(h_opt)->excludes(g_opt);

  auto* wandering = app.add_subcommand("wandering", "wandering-interval certificate");
  wandering->add_option("element", file, "element file or built-in")->required();
  wandering->add_option("--out", out, "output file (default stdout)");

  std::size_t count = 5, len = 6;
  th::cert::FreeProductParams fp;
  auto* pingpong = app.add_subcommand("pingpong-t", "ping-pong instance for T with a free-product test");
  pingpong->add_option("--n", count, "number of representatives (at most 8)");
  pingpong->add_option("--trials", fp.trials, "random reduced words");
  pingpong->add_option("--max-len", fp.max_len, "syllables per word");
  pingpong->add_option("--seed", fp.seed, "seed for the word sampler");
  pingpong->add_option("--out", out, "output file (default stdout)");

  auto* orbit = app.add_subcommand("orbit-v", "orbit-of-0 check for the V instance");
  orbit->add_option("--n", count, "number of representatives");
  orbit->add_option("--len", len, "maximal word length");
  orbit->add_option("--out", out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "re-verify a certificate file");
  verify->add_option("file", file, "certificate file")->required();

  CLI11_PARSE(app, argc, argv);

  th::Budgets budgets;
  try {
    budgets = th::Budgets::from_env();
    if (normalize->parsed()) {
      std::cout << th::reduce(load_element(file)).to_text();
    } else if (compose->parsed()) {
      th::TreeDiagram acc;
      for (const auto& f : files) acc = th::multiply(acc, load_element(f));
      std::cout << acc.to_text();
    } else if (evaluate->parsed()) {
      th::TreeDiagram d = load_element(file);
      for (const auto& p : points) {
        th::Dyadic x = th::Dyadic::parse(p);
        std::cout << x << " -> " << th::evaluate(d, x) << "\n";
      }
    } else if (certf->parsed()) {
      if (random_count > 0) {
        std::vector<th::cert::Json> docs;
        for (std::size_t i = 0; i < random_count; ++i)
          docs.push_back(th::cert::generation_document(th::random_generation_cert(seed, i, max_leaves)));
        emit(th::cert::dump(th::cert::suite_document(docs)), out);
      } else {
        th::TreeDiagram h = h_arg.empty() ? th::identity() : load_element(h_arg);
        th::TreeDiagram g = g_arg.empty() ? th::identity() : load_element(g_arg);
        emit(th::cert::dump(th::cert::generation_document(th::invariable_generation_cert(h, g))), out);
      }
    } else if (wandering->parsed()) {
      emit(th::cert::dump(th::cert::wandering_document(th::wandering_interval(load_element(file), budgets))), out);
    } else if (pingpong->parsed()) {
      auto inst = th::build_pingpong(th::enumerate_reduced(th::GroupClass::T, count),
                                     th::t_instance_intervals(count), true, budgets);
      emit(th::cert::dump(th::cert::pingpong_t_document(inst, fp)), out);
    } else if (orbit->parsed()) {
      auto inst = th::build_pingpong(th::enumerate_reduced(th::GroupClass::V, count),
                                     th::v_instance_intervals(count), false, budgets);
      emit(th::cert::dump(th::cert::orbit_v_document(inst, len)), out);
    } else if (verify->parsed()) {
      th::cert::Outcome o = th::cert::verify_text(read_file(file));
      if (!o.ok) {
        std::cerr << "verification failed: " << o.message << "\n";
        return kFailure;
      }
      std::cout << o.message << "\n";
    }
  } catch (const th::BudgetExhausted& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
