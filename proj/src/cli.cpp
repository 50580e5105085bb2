#include "slicerank/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "slicerank/counting.hpp"
#include "slicerank/errors.hpp"
#include "slicerank/io.hpp"
#include "slicerank/rates.hpp"

namespace slicerank::cli {

namespace {

using io::Json;

// Thrown to return exit status 1 after the report has been written.
struct NegativeVerdict {};

struct Common {
  std::string out_file;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep))
    if (!part.empty()) out.push_back(part);
  return out;
}

std::int64_t parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("bad integer \"" + s + "\"");
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_int(part));
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

class Runner {
 public:
  Runner(std::ostream& out, const Common& common) : out_(out), common_(common) {}

  void emit(const Json& j) { emit_text(j.dump(2) + "\n"); }

  void emit_text(const std::string& text) {
    if (common_.out_file.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(common_.out_file);
    if (!f) throw InvalidArgument("cannot write " + common_.out_file);
    f << text;
  }

  const Common& common() const { return common_; }

 private:
  std::ostream& out_;
  const Common& common_;
};

Tensor3 diagonal_tensor(std::size_t n, std::int64_t p) {
  const auto labels = token_labels(n);
  return Tensor3::from_function(PrimeField(p), {labels, labels, labels},
                                [](std::size_t i, std::size_t j, std::size_t k) { return i == j && j == k ? 1 : 0; });
}

std::vector<std::array<BigInt, 3>> parse_sizes(const std::string& text) {
  // "8,4" are products |A||B||C|; "2x2x2,1x1x2" are explicit size triples.
  std::vector<std::array<BigInt, 3>> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, 'x');
    if (parts.size() == 1)
      out.push_back({BigInt(parse_int(parts[0])), 1, 1});
    else if (parts.size() == 3)
      out.push_back({BigInt(parse_int(parts[0])), BigInt(parse_int(parts[1])), BigInt(parse_int(parts[2]))});
    else
      throw ParseError("sizes are products or AxBxC triples");
  }
  if (out.empty()) throw ParseError("no sizes given");
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Slice rank, sum-free set and STPP toolkit", "slicerank"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--out", common.out_file, "Write the report to FILE instead of stdout");
  app.add_option("--seed", common.seed, "Seed for randomized samplers");
  app.add_option("--threads", common.threads, "Worker threads (0 = hardware)");

  Runner runner(out, common);
  std::function<void()> action;
  const auto guards = [] { return Guards::from_environment(); };

  // bound
  std::string group_text;
  auto* bound = app.add_subcommand("bound", "Theorem bounds on tricolored sum-free sets in a group");
  bound->add_option("--group", group_text, "Group, e.g. \"Z2^10\" or \"Z4 x Z6\"")->required();
  bound->callback([&] {
    action = [&] {
      const auto g = parse_group_spec(group_text);
      Json j = {{"group", g.to_string()}, {"order", io::big_to_json(g.order())}};
      j.update(io::to_json(theorem_bound(g)));
      runner.emit(j);
    };
  });

  // rates
  std::string m_list = "1,2,3,4,5,6,7,8", alpha_text = "1/3";
  std::int64_t rate_n = 6;
  auto* rates = app.add_subcommand("rates", "CSV grid of I(m,a), J(m+1) and exact tuple fractions");
  rates->add_option("--m", m_list, "Comma-separated values of m");
  rates->add_option("--alpha", alpha_text, "Rational alpha in (0, 1/2)");
  rates->add_option("--n", rate_n, "Tuple length for the exact count");
  rates->callback([&] {
    action = [&] {
      const Rational alpha = parse_rational(alpha_text);
      std::string csv = "m,alpha,I,J,exact_count,fraction,hoeffding_bound,chernoff_bound\n";
      for (const auto m : parse_int_list(m_list)) {
        const auto i = rate_I(RateQuery{m, alpha});
        const auto jv = rate_J(static_cast<double>(m + 1));
        const auto tf = tuple_fraction_exact(m, alpha, rate_n, guards());
        csv += std::to_string(m) + "," + to_string(alpha) + "," + fmt(i.value) + "," + fmt(jv.value) + "," +
               to_string(tf.count) + "," + to_string(tf.fraction) + "," +
               fmt(hoeffding_fraction(Rational(1, 2) - alpha, rate_n)) + "," +
               fmt(std::exp(-i.value * static_cast<double>(rate_n))) + "\n";
      }
      runner.emit_text(csv);
    };
  });

  // constants
  auto* consts = app.add_subcommand("constants", "The constants epsilon and delta");
  consts->callback([&] {
    action = [&] {
      const auto c = constants();
      runner.emit({{"epsilon", c.epsilon}, {"delta", c.delta}, {"delta_closed_form", c.delta_closed_form}});
    };
  });

  // sumfree-verify
  std::string in_file;
  auto* sf_verify = app.add_subcommand("sumfree-verify", "Verify a tricolored or border sum-free set");
  sf_verify->add_option("--in", in_file, "JSON set file")->required();
  sf_verify->callback([&] {
    action = [&] {
      const auto j = read_json(in_file);
      const bool border = io::is_border_json(j);
      const auto v = border ? verify_border(io::border_from_json(j)) : verify_sumfree(io::sumfree_from_json(j));
      Json report = io::to_json(v);
      report["kind"] = border ? "border" : "tricolored";
      runner.emit(report);
      if (!v.valid) throw NegativeVerdict{};
    };
  });

  // sumfree-search
  auto* sf_search = app.add_subcommand("sumfree-search", "Largest tricolored sum-free set by exhaustive search");
  sf_search->add_option("--group", group_text, "Group")->required();
  sf_search->callback([&] {
    action = [&] {
      SumFreeSearchOptions opt;
      opt.guards = guards();
      opt.threads = common.threads;
      // Node counts depend on how work is split across threads, so they are
      // left out to keep the report independent of --threads.
      runner.emit(io::to_json(max_sumfree_exhaustive(parse_group_spec(group_text), opt).witness));
    };
  });

  // stpp-verify
  auto* stpp_verify = app.add_subcommand("stpp-verify", "Verify an STPP construction");
  stpp_verify->add_option("--in", in_file, "JSON construction file")->required();
  stpp_verify->callback([&] {
    action = [&] {
      const auto v = verify_stpp(io::stpp_from_json(read_json(in_file)));
      runner.emit({{"valid", v.valid}, {"reason", v.reason}});
      if (!v.valid) throw NegativeVerdict{};
    };
  });

  // packing
  auto* packing = app.add_subcommand("packing", "Packing sums and exponents of an STPP construction");
  packing->add_option("--in", in_file, "JSON construction file")->required();
  packing->callback([&] {
    action = [&] {
      const auto c = io::stpp_from_json(read_json(in_file));
      const auto v = verify_stpp(c);
      if (!v.valid) throw UnverifiedInput("packing: " + v.reason);
      const auto r = packing_report(c);
      if (!r) throw InvalidArgument("packing exponents are undefined for the trivial group");
      runner.emit(io::to_json(*r));
    };
  });

  // omega
  std::string sizes_text, order_text;
  bool table = false;
  auto* omega = app.add_subcommand("omega", "Upper bound on omega from an STPP construction or its sizes");
  auto* omega_in = omega->add_option("--in", in_file, "JSON construction file");
  omega->add_option("--sizes", sizes_text, "Products \"8,4\" or size triples \"2x2x2,1x1x2\"")->excludes(omega_in);
  omega->add_option("--order", order_text, "Group order for --sizes");
  omega->add_flag("--table", table, "Human-readable table instead of JSON");
  omega->callback([&] {
    action = [&] {
      OmegaReport r;
      if (!in_file.empty()) {
        const auto c = io::stpp_from_json(read_json(in_file));
        const auto v = verify_stpp(c);
        if (!v.valid) throw UnverifiedInput("omega: " + v.reason);
        r = omega_bound(c);
      } else {
        if (sizes_text.empty() || order_text.empty()) throw InvalidArgument("omega needs --in, or --sizes with --order");
        const BigInt order(parse_int(order_text));
        const auto sizes = parse_sizes(sizes_text);
        const bool triples = sizes_text.find('x') != std::string::npos;
        if (triples) {
          r = omega_bound_from_sizes(sizes, order);
        } else {
          std::vector<BigInt> products;
          for (const auto& s : sizes) products.push_back(s[0]);
          r = omega_bound_from_products(products, order);
        }
      }
      if (table)
        runner.emit_text(io::omega_table(r));
      else
        runner.emit(io::to_json(r));
    };
  });

  // border
  auto* border = app.add_subcommand("border", "Border tricolored sum-free set from an STPP construction");
  border->add_option("--in", in_file, "JSON construction file")->required();
  border->callback([&] {
    action = [&] {
      const auto c = io::stpp_from_json(read_json(in_file));
      const auto b = border_from_stpp(c);
      Json j = io::to_json(b);
      j["lower_bound"] = io::rational_to_json(border_lower_bound(c));
      runner.emit(j);
    };
  });

  // unborder
  std::size_t power = 1;
  auto* unb = app.add_subcommand("unborder", "Tricolored sum-free set in H^N from a border set");
  unb->add_option("--in", in_file, "JSON border set file")->required();
  unb->add_option("--power", power, "N");
  unb->callback([&] {
    action = [&] {
      const auto b = io::border_from_json(read_json(in_file));
      const auto v = verify_border(b);
      if (!v.valid) throw UnverifiedInput("unborder: " + v.reason);
      const auto r = unborder(b, power, guards());
      Json j = io::to_json(r.set);
      j["level"] = r.level;
      j["range"] = r.range;
      j["guaranteed"] = io::big_to_json(r.guaranteed);
      runner.emit(j);
    };
  });

  // uniformize
  std::size_t spot_checks = 100;
  auto* unif = app.add_subcommand("uniformize", "Uniform STPP family in H^{3N} (symbolic sizes)");
  unif->add_option("--in", in_file, "JSON construction file")->required();
  unif->add_option("--power", power, "N");
  unif->add_option("--spot-checks", spot_checks, "Randomized cross-condition trials on sampled members");
  unif->callback([&] {
    action = [&] {
      const auto s = uniformize(io::stpp_from_json(read_json(in_file)), power, guards());
      std::mt19937_64 rng(common.seed);
      Json j = io::to_json(s);
      const auto failures = spot_check(s, rng, spot_checks);
      j["spot_checks"] = spot_checks;
      j["spot_check_failures"] = failures;
      runner.emit(j);
      if (failures != 0) throw NegativeVerdict{};
    };
  });

  // tensor
  std::int64_t p = 3;
  std::size_t diagonal = 0;
  std::string poly_text, product_a, product_b;
  auto* tensor = app.add_subcommand("tensor", "Build a tensor: D_H, a diagonal, P(x+y+z) or a tensor product");
  auto* t_group = tensor->add_option("--group", group_text, "D_H for this group");
  auto* t_diag = tensor->add_option("--diagonal", diagonal, "n x n x n identity diagonal");
  auto* t_poly = tensor->add_option("--poly", poly_text, "Values P(0),...,P(p-1) of a function on F_p");
  auto* t_prod = tensor->add_option("--product", product_a, "First factor (JSON tensor)");
  tensor->add_option("--with", product_b, "Second factor for --product")->needs(t_prod);
  tensor->add_option("--p", p, "Prime field");
  t_group->excludes(t_diag)->excludes(t_poly)->excludes(t_prod);
  t_diag->excludes(t_poly)->excludes(t_prod);
  t_poly->excludes(t_prod);
  tensor->callback([&] {
    action = [&] {
      if (!group_text.empty())
        runner.emit(io::to_json(group_tensor(parse_group_spec(group_text), p, guards())));
      else if (diagonal > 0)
        runner.emit(io::to_json(diagonal_tensor(diagonal, p)));
      else if (!poly_text.empty())
        runner.emit(io::to_json(poly_sum_tensor(parse_int_list(poly_text), p)));
      else if (!product_a.empty() && !product_b.empty())
        runner.emit(io::to_json(tensor_product(io::tensor_from_json(read_json(product_a)),
                                               io::tensor_from_json(read_json(product_b)), guards())));
      else
        throw InvalidArgument("tensor needs --group, --diagonal, --poly or --product with --with");
    };
  });

  // slicerank
  std::string decomposition_file, with_file, mode_text = "tensor_rank";
  auto* sr = app.add_subcommand("slicerank", "Exact slice rank, or a product decomposition with --with");
  sr->add_option("--in", in_file, "JSON tensor file")->required();
  sr->add_option("--decomposition", decomposition_file, "Slice decomposition of --in (for --with)");
  sr->add_option("--with", with_file, "Second tensor: emit a slice decomposition of the product");
  sr->add_option("--mode", mode_text, "tensor_rank or max_axis")
      ->check(CLI::IsMember({"tensor_rank", "max_axis"}));
  sr->callback([&] {
    action = [&] {
      const auto t = io::tensor_from_json(read_json(in_file));
      if (!with_file.empty()) {
        if (decomposition_file.empty()) throw InvalidArgument("--with needs --decomposition");
        const auto g = io::tensor_from_json(read_json(with_file));
        const auto d = product_slice_decomposition(
            t, io::slice_decomposition_from_json(read_json(decomposition_file)), g,
            mode_text == "max_axis" ? ProductMode::max_axis : ProductMode::tensor_rank);
        runner.emit(io::to_json(d));
        return;
      }
      ExactRankOptions opt;
      opt.guards = guards();
      opt.threads = common.threads;
      const auto r = exact_slice_rank_with_witness(t, opt);
      Json vanishing = Json::array();
      for (const auto& v : r.vanishing) vanishing.push_back(io::to_json(v));
      runner.emit({{"rank", r.rank},
                   {"vanishing", vanishing},
                   {"decomposition", io::to_json(r.decomposition)},
                   {"verified", verify_slice_decomposition(t, r.decomposition)}});
    };
  });

  // triangle
  std::int64_t q = 0;
  std::string check_file;
  auto* tri = app.add_subcommand("triangle", "Triangle decompositions: D_{Z/q} or P(x+y+z); or check one");
  auto* tri_q = tri->add_option("--q", q, "Prime power q");
  auto* tri_poly = tri->add_option("--poly", poly_text, "Values P(0),...,P(p-1)");
  auto* tri_check = tri->add_option("--check", check_file, "Decomposition to verify against --in");
  tri->add_option("--in", in_file, "JSON tensor for --check");
  tri->add_option("--p", p, "Prime for --poly");
  tri_q->excludes(tri_poly)->excludes(tri_check);
  tri_poly->excludes(tri_check);
  tri->callback([&] {
    action = [&] {
      if (!check_file.empty()) {
        if (in_file.empty()) throw InvalidArgument("--check needs --in");
        const bool ok = verify_triangle_decomposition(io::tensor_from_json(read_json(in_file)),
                                                      io::triangle_decomposition_from_json(read_json(check_file)));
        runner.emit({{"valid", ok}});
        if (!ok) throw NegativeVerdict{};
        return;
      }
      TriangleDecomposition d;
      Tensor3 target = [&] {
        if (q > 0) {
          d = triangle_decomposition_cyclic(q);
          return group_tensor(GroupSpec::cyclic(q), d.p, guards());
        }
        if (poly_text.empty()) throw InvalidArgument("triangle needs --q, --poly or --check");
        const auto values = parse_int_list(poly_text);
        d = triangle_decomposition_poly(values, p);
        return poly_sum_tensor(values, p);
      }();
      Json j = io::to_json(d);
      j["verified"] = verify_triangle_decomposition(target, d);
      runner.emit(j);
    };
  });

  // instability
  std::string from_slice, from_triangle, verify_file;
  bool search = false;
  std::int64_t max_weight = 2;
  auto* inst = app.add_subcommand("instability", "Instability certificates: build, verify or search");
  auto* i_slice = inst->add_option("--from-slice", from_slice, "Certificate from a slice decomposition");
  auto* i_tri = inst->add_option("--from-triangle", from_triangle, "Certificate from a triangle decomposition");
  auto* i_verify = inst->add_option("--verify", verify_file, "Certificate to verify against --in");
  auto* i_search = inst->add_flag("--search", search, "Search small weights for a certificate of --in");
  inst->add_option("--in", in_file, "JSON tensor");
  inst->add_option("--max-weight", max_weight, "Largest weight tried by --search");
  i_slice->excludes(i_tri)->excludes(i_verify)->excludes(i_search);
  i_tri->excludes(i_verify)->excludes(i_search);
  i_verify->excludes(i_search);
  inst->callback([&] {
    action = [&] {
      if (!from_slice.empty()) {
        runner.emit(io::to_json(instability_from_slice(io::slice_decomposition_from_json(read_json(from_slice)))));
        return;
      }
      if (!from_triangle.empty()) {
        runner.emit(
            io::to_json(instability_from_triangle(io::triangle_decomposition_from_json(read_json(from_triangle)))));
        return;
      }
      if (in_file.empty()) throw InvalidArgument("instability needs --from-slice, --from-triangle, or --in");
      const auto t = io::tensor_from_json(read_json(in_file));
      if (!verify_file.empty()) {
        const auto v = verify_instability_certificate(t, io::certificate_from_json(read_json(verify_file)));
        runner.emit(io::to_json(v));
        if (!v.valid) throw NegativeVerdict{};
        return;
      }
      if (!search) throw InvalidArgument("instability --in needs --verify or --search");
      CertificateSearchOptions opt;
      opt.guards = guards();
      opt.threads = common.threads;
      opt.max_weight = max_weight;
      const auto c = find_instability_certificate(t, opt);
      runner.emit(c ? Json{{"found", true}, {"certificate", io::to_json(*c)}} : Json{{"found", false}});
    };
  });

  // count
  std::string weights_text, threshold_text, dims_text, epsilon_text;
  std::int64_t count_n = 1, k = 0, count_m = 0;
  auto* count = app.add_subcommand("count", "Exact tuple counts and slice rank bounds for tensor powers");
  count->add_option("--n", count_n, "Tuple length / tensor power")->required();
  auto* c_weights = count->add_option("--weights", weights_text, "Weight multiset, comma-separated");
  count->add_option("--threshold", threshold_text, "Per-coordinate threshold for --weights");
  auto* c_k = count->add_option("--k", k, "Triangle rank k: slice rank bound of the n-th power");
  auto* c_m = count->add_option("--m", count_m, "Tuples in {0..m}^n with sum <= alpha m n");
  count->add_option("--alpha", alpha_text, "Alpha for --m");
  auto* c_dims = count->add_option("--dims", dims_text, "Axis sizes a,b,c for the instability power bound");
  count->add_option("--epsilon", epsilon_text, "Epsilon for --dims");
  c_weights->excludes(c_k)->excludes(c_m)->excludes(c_dims);
  c_k->excludes(c_m)->excludes(c_dims);
  c_m->excludes(c_dims);
  count->callback([&] {
    action = [&] {
      if (!weights_text.empty()) {
        if (threshold_text.empty()) throw InvalidArgument("--weights needs --threshold");
        const auto c = weighted_tuple_count(parse_int_list(weights_text), count_n, parse_rational(threshold_text), guards());
        runner.emit({{"count", io::big_to_json(c)}});
      } else if (k > 0) {
        const auto b = triangle_to_slice_power_bound(k, count_n, guards());
        runner.emit({{"count", io::big_to_json(b.count)}, {"bound", io::big_to_json(b.bound)}, {"asymptotic", b.asymptotic}});
      } else if (count_m > 0) {
        const auto f = tuple_fraction_exact(count_m, parse_rational(alpha_text), count_n, guards());
        runner.emit({{"count", io::big_to_json(f.count)},
                     {"fraction", io::rational_to_json(f.fraction)},
                     {"fraction_value", to_double(f.fraction)}});
      } else if (!dims_text.empty()) {
        if (epsilon_text.empty()) throw InvalidArgument("--dims needs --epsilon");
        const auto d = parse_int_list(dims_text);
        if (d.size() != 3) throw ParseError("--dims takes three sizes");
        runner.emit({{"bound", power_slice_bound({d[0], d[1], d[2]}, parse_rational(epsilon_text), count_n)}});
      } else {
        throw InvalidArgument("count needs --weights, --k, --m or --dims");
      }
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    action();
    return 0;
  } catch (const NegativeVerdict&) {
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace slicerank::cli
