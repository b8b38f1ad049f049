// Python bindings for the core operations: spaces and domains, Besov
// energies, Whitney covers, trace/extension, ball chains, and hyperbolic
// fillings.  Vectors map to Python lists; functions over a domain take
// full-length per-atom arrays.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "bmms/besov.hpp"
#include "bmms/chains.hpp"
#include "bmms/extension.hpp"
#include "bmms/generators.hpp"
#include "bmms/hyperfill.hpp"
#include "bmms/partition.hpp"
#include "bmms/trace.hpp"
#include "bmms/whitney.hpp"

namespace py = pybind11;
using namespace bmms;

namespace {

void require_size(const std::vector<double>& u, int n, const char* what) {
  if ((int)u.size() != n) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(n) + " values, got " +
                                std::to_string(u.size()));
  }
}

std::vector<double> restrict_to(const std::vector<double>& u,
                                const std::vector<int>& idx) {
  std::vector<double> out;
  out.reserve(idx.size());
  for (int a : idx) out.push_back(u[a]);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite metric measure spaces: Besov energies, Whitney covers, "
            "boundary traces and extensions, ball chains, hyperbolic fillings";

  py::register_exception<Error>(m, "LibraryError", PyExc_RuntimeError);

  // ------------------------------------------------------------ core types
  py::class_<Space>(m, "Space")
      .def(py::init([](std::vector<std::vector<double>> pts,
                       std::vector<double> w) {
             return Space(std::move(pts), MetricSpec{}, std::move(w));
           }),
           py::arg("points"), py::arg("weights"),
           "Euclidean space over the given coordinate rows")
      .def_static("from_matrix", &Space::from_matrix, py::arg("matrix"),
                  py::arg("weights"))
      .def("size", &Space::size)
      .def("dist", &Space::dist, py::arg("i"), py::arg("j"))
      .def("weight", &Space::weight, py::arg("i"))
      .def("weights", &Space::weights)
      .def("point", &Space::point, py::arg("i"))
      .def("total_mass", &Space::total_mass)
      .def("diameter", &Space::diameter)
      .def("min_positive_distance", &Space::min_positive_distance)
      .def("ball", &Space::ball, py::arg("center"), py::arg("r"))
      .def("ball_mass", &Space::ball_mass, py::arg("center"), py::arg("r"));

  py::class_<Domain>(m, "Domain")
      .def(py::init<Space, std::vector<int>, std::vector<double>>(),
           py::arg("space"), py::arg("boundary"), py::arg("nu"))
      .def("space", &Domain::space, py::return_value_policy::reference_internal)
      .def("interior", &Domain::interior)
      .def("boundary", &Domain::boundary)
      .def("nu", &Domain::nu)
      .def("dist_to_boundary", &Domain::dist_to_boundary, py::arg("i"))
      .def("nearest_boundary_atom", &Domain::nearest_boundary_atom,
           py::arg("i"))
      .def("boundary_diameter", &Domain::boundary_diameter)
      .def("min_interior_gap", &Domain::min_interior_gap)
      .def("mu_total", &Domain::mu_total)
      .def("nu_total", &Domain::nu_total);

  py::class_<SpaceData>(m, "SpaceData")
      .def_readonly("points", &SpaceData::points)
      .def_readonly("weights", &SpaceData::weights)
      .def_readonly("boundary_indices", &SpaceData::boundary_indices)
      .def_readonly("boundary_weights", &SpaceData::boundary_weights)
      .def_readonly("metadata", &SpaceData::metadata)
      .def("has_boundary", &SpaceData::has_boundary)
      .def("to_space", &SpaceData::to_space)
      .def("to_domain", &SpaceData::to_domain);

  m.def("example", &generate_example, py::arg("name"), py::arg("size") = 64,
        "Deterministic example space: two-point, interval-grid, "
        "square-grid-bottom-edge, cantor-boundary, circle-net, "
        "snowflake-circle");

  py::class_<BesovParams>(m, "BesovParams")
      .def(py::init([](double alpha, double p, double q, double theta) {
             BesovParams bp{alpha, p, q, theta};
             bp.validate();
             return bp;
           }),
           py::arg("alpha") = 0.5, py::arg("p") = 1.0, py::arg("q") = 1.0,
           py::arg("theta") = 0.0)
      .def_readonly("alpha", &BesovParams::alpha)
      .def_readonly("p", &BesovParams::p)
      .def_readonly("q", &BesovParams::q)
      .def_readonly("theta", &BesovParams::theta);

  // --------------------------------------------------------------- energies
  py::class_<EnergyRow>(m, "EnergyRow")
      .def_readonly("k", &EnergyRow::k)
      .def_readonly("t", &EnergyRow::t)
      .def_readonly("energy", &EnergyRow::energy)
      .def_readonly("contribution", &EnergyRow::contribution);

  py::class_<EnergyReport>(m, "EnergyReport")
      .def_readonly("form", &EnergyReport::form)
      .def_readonly("value", &EnergyReport::value)
      .def_readonly("tail", &EnergyReport::tail)
      .def_readonly("k_min", &EnergyReport::k_min)
      .def_readonly("k_max", &EnergyReport::k_max)
      .def_readonly("rows", &EnergyReport::rows);

  py::class_<EnvelopeBracket>(m, "EnvelopeBracket")
      .def_readonly("lower", &EnvelopeBracket::lower)
      .def_readonly("value", &EnvelopeBracket::value)
      .def_readonly("upper", &EnvelopeBracket::upper)
      .def_readonly("c", &EnvelopeBracket::c);

  m.def(
      "energy_dyadic",
      [](const Space& sp, const std::vector<double>& u, const BesovParams& bp) {
        require_size(u, sp.size(), "u");
        return besov_energy_dyadic(whole_space(sp), u, bp);
      },
      py::arg("space"), py::arg("u"), py::arg("params"));
  m.def(
      "energy_integral",
      [](const Space& sp, const std::vector<double>& u, const BesovParams& bp) {
        require_size(u, sp.size(), "u");
        return besov_energy_integral(whole_space(sp), u, bp);
      },
      py::arg("space"), py::arg("u"), py::arg("params"));
  m.def(
      "interior_energy_dyadic",
      [](const Domain& dom, const std::vector<double>& u,
         const BesovParams& bp) {
        require_size(u, dom.space().size(), "u");
        MeasuredSubset set = interior_subset(dom);
        return besov_energy_dyadic(set, restrict_to(u, set.idx), bp);
      },
      py::arg("domain"), py::arg("u"), py::arg("params"),
      "Dyadic energy over the interior; u is indexed by atom id");
  m.def(
      "envelope",
      [](const Space& sp, const std::vector<double>& u, const BesovParams& bp) {
        require_size(u, sp.size(), "u");
        return envelope_bracket(whole_space(sp), u, bp);
      },
      py::arg("space"), py::arg("u"), py::arg("params"));

  py::class_<RearrangementCheck>(m, "RearrangementCheck")
      .def_readonly("lhs", &RearrangementCheck::lhs)
      .def_readonly("bound", &RearrangementCheck::bound)
      .def_readonly("ratio", &RearrangementCheck::ratio)
      .def_readonly("holds", &RearrangementCheck::holds);
  m.def("sum_rearrangement", &sum_rearrangement_check, py::arg("a"),
        py::arg("b"), py::arg("c"));

  // ------------------------------------------------------- covers, partition
  py::class_<WhitneyBall>(m, "WhitneyBall")
      .def_readonly("level", &WhitneyBall::level)
      .def_readonly("center", &WhitneyBall::center)
      .def_readonly("radius", &WhitneyBall::radius)
      .def_readonly("anchor", &WhitneyBall::anchor)
      .def_readonly("shadow", &WhitneyBall::shadow)
      .def_readonly("enlarged_shadow", &WhitneyBall::enlarged_shadow);
  py::class_<WhitneyCover>(m, "WhitneyCover")
      .def_readonly("balls", &WhitneyCover::balls)
      .def_readonly("levels", &WhitneyCover::levels);
  py::class_<WhitneyCheck>(m, "WhitneyCheck")
      .def_readonly("covers_interior", &WhitneyCheck::covers_interior)
      .def_readonly("radius_rule_exact", &WhitneyCheck::radius_rule_exact)
      .def_readonly("level_windows", &WhitneyCheck::level_windows)
      .def_readonly("level_separation", &WhitneyCheck::level_separation)
      .def_readonly("max_overlap_2dilate", &WhitneyCheck::max_overlap_2dilate)
      .def_readonly("passed", &WhitneyCheck::pass);
  m.def("whitney_cover", &whitney_cover, py::arg("domain"));
  m.def("verify_whitney", &verify_whitney, py::arg("domain"), py::arg("cover"));
  m.def(
      "partition_sum",
      [](const Domain& dom, const WhitneyCover& cover, int atom) {
        PartitionOfUnity pou;
        pou.sp = &dom.space();
        for (const auto& b : cover.balls)
          pou.balls.push_back({b.center, b.radius});
        if (!(pou.bump_sum(atom) > 0)) return 0.0;
        double s = 0;
        for (double v : pou.evaluate(atom)) s += v;
        return s;
      },
      py::arg("domain"), py::arg("cover"), py::arg("atom"),
      "Sum of the normalized partition functions at an atom");

  // -------------------------------------------------------- trace, extension
  py::class_<TraceResult>(m, "TraceResult")
      .def_readonly("scales", &TraceResult::scales)
      .def_readonly("per_scale_values", &TraceResult::per_scale_values)
      .def_readonly("values", &TraceResult::values)
      .def_readonly("cauchy_diffs", &TraceResult::cauchy_diffs)
      .def_readonly("decay_slope", &TraceResult::decay_slope)
      .def_readonly("lebesgue_residual", &TraceResult::lebesgue_residual);
  m.def(
      "trace",
      [](const Domain& dom, const std::vector<double>& u, const BesovParams& bp,
         const std::vector<double>& scales) {
        require_size(u, dom.space().size(), "u");
        return trace(dom, u, bp, scales);
      },
      py::arg("domain"), py::arg("u"), py::arg("params"),
      py::arg("scales") = std::vector<double>{});

  py::class_<ExtensionResult>(m, "ExtensionResult")
      .def_readonly("cover", &ExtensionResult::cover)
      .def_readonly("coefficients", &ExtensionResult::coefficients)
      .def_readonly("values", &ExtensionResult::values);
  m.def(
      "whitney_extension",
      [](const Domain& dom, const std::vector<double>& f) {
        require_size(f, dom.space().size(), "f");
        return whitney_extension(dom, f);
      },
      py::arg("domain"), py::arg("f"),
      "Extend boundary data into the interior; f is indexed by atom id");
  m.def(
      "cutoff_extension",
      [](const Domain& dom, const ExtensionResult& ext) {
        return cutoff_extension(dom, ext);
      },
      py::arg("domain"), py::arg("extension"));

  py::class_<RoundtripReport>(m, "RoundtripReport")
      .def_readonly("traced", &RoundtripReport::traced)
      .def_readonly("deviations", &RoundtripReport::deviations)
      .def_readonly("max_deviation", &RoundtripReport::max_deviation)
      .def_readonly("lp_deviation", &RoundtripReport::lp_deviation)
      .def_readonly("trace_detail", &RoundtripReport::trace_detail);
  m.def(
      "roundtrip",
      [](const Domain& dom, const std::vector<double>& f,
         const BesovParams& bp) {
        require_size(f, dom.space().size(), "f");
        return roundtrip_check(dom, f, bp);
      },
      py::arg("domain"), py::arg("f"), py::arg("params"));

  py::class_<MaximalValue>(m, "MaximalValue")
      .def_readonly("value", &MaximalValue::value)
      .def_readonly("arg_r", &MaximalValue::arg_r);
  m.def("fractional_maximal", &fractional_maximal, py::arg("domain"),
        py::arg("f"), py::arg("z"), py::arg("theta"), py::arg("R"));

  py::class_<Weak11Row>(m, "Weak11Row")
      .def_readonly("lam", &Weak11Row::lambda)
      .def_readonly("nu_superlevel", &Weak11Row::nu_superlevel)
      .def_readonly("normalized", &Weak11Row::normalized);
  py::class_<Weak11Report>(m, "Weak11Report")
      .def_readonly("maximal", &Weak11Report::maximal)
      .def_readonly("f_l1", &Weak11Report::f_l1)
      .def_readonly("rows", &Weak11Report::rows)
      .def_readonly("max_normalized", &Weak11Report::max_normalized);
  m.def("weak11_check", &weak11_check, py::arg("domain"), py::arg("f"),
        py::arg("theta"), py::arg("R"), py::arg("lambdas"));

  // ----------------------------------------------------------------- chains
  py::class_<Ball>(m, "Ball")
      .def_readonly("center", &Ball::center)
      .def_readonly("radius", &Ball::radius);
  py::class_<BallChain>(m, "BallChain")
      .def_readonly("balls", &BallChain::balls)
      .def_readonly("M", &BallChain::M)
      .def_readonly("z", &BallChain::z)
      .def_readonly("w", &BallChain::w)
      .def_readonly("deepest_shell_radius", &BallChain::deepest_shell_radius)
      .def_readonly("shell_tol", &BallChain::shell_tol);
  py::class_<ChainCheck>(m, "ChainCheck")
      .def_readonly("dilates_inside", &ChainCheck::dilates_inside)
      .def_readonly("endpoint_proximity", &ChainCheck::endpoint_proximity)
      .def_readonly("half_balls_meet", &ChainCheck::half_balls_meet)
      .def_readonly("depth_ratio_min", &ChainCheck::depth_ratio_min)
      .def_readonly("depth_ratio_max", &ChainCheck::depth_ratio_max)
      .def_readonly("max_overlap_4dilate", &ChainCheck::max_overlap_4dilate)
      .def_readonly("passed", &ChainCheck::pass);
  m.def(
      "harnack_chain",
      [](const Domain& dom, const std::vector<int>& path, double r, double M) {
        return harnack_chain(dom, path, r, M);
      },
      py::arg("domain"), py::arg("path"), py::arg("r"), py::arg("M") = 2.0);
  m.def(
      "boundary_chain",
      [](const Domain& dom, int z, int w, double graph_radius, double a_est,
         double M, double shell_tol) {
        double gr = graph_radius > 0 ? graph_radius
                                     : 1.5 * dom.min_interior_gap();
        ProximityGraph g = radius_graph(dom.space(), dom.interior(), gr);
        BoundaryChainOptions opt;
        opt.a_est = a_est;
        opt.M = M;
        opt.shell_tol = shell_tol;
        return boundary_chain(dom, z, w, g, opt).chain;
      },
      py::arg("domain"), py::arg("z"), py::arg("w"),
      py::arg("graph_radius") = 0.0, py::arg("a_est") = 4.0,
      py::arg("M") = 2.0, py::arg("shell_tol") = -1.0,
      "Boundary-to-boundary ball chain over an interior proximity graph");
  m.def("verify_chain", &verify_chain, py::arg("domain"), py::arg("chain"));

  // ---------------------------------------------------------------- fillings
  py::class_<FillingVertex>(m, "FillingVertex")
      .def_readonly("level", &FillingVertex::level)
      .def_readonly("point", &FillingVertex::point)
      .def_readonly("mass", &FillingVertex::mass)
      .def_readonly("depth", &FillingVertex::depth);
  py::class_<FillingEdge>(m, "FillingEdge")
      .def_readonly("a", &FillingEdge::a)
      .def_readonly("b", &FillingEdge::b)
      .def_readonly("unif_length", &FillingEdge::unif_length)
      .def_readonly("density", &FillingEdge::density)
      .def_property_readonly("kind", [](const FillingEdge& e) {
        return e.kind == EdgeKind::Horizontal ? "horizontal" : "vertical";
      });
  py::class_<HyperbolicFilling>(m, "HyperbolicFilling")
      .def(py::init([](const Space& base, std::vector<double> nu, int levels,
                       double beta, int root) {
             FillingParams p;
             p.levels = levels;
             p.beta = beta;
             p.root = root;
             return HyperbolicFilling(base, std::move(nu), p);
           }),
           py::arg("base"), py::arg("nu"), py::arg("levels") = 5,
           py::arg("beta") = 0.69314718055994530942, py::arg("root") = 0)
      .def("vertex_count", &HyperbolicFilling::vertex_count)
      .def("vertices", &HyperbolicFilling::vertices)
      .def("edges", &HyperbolicFilling::edges)
      .def("nets", &HyperbolicFilling::nets)
      .def("vertex_at", &HyperbolicFilling::vertex_at, py::arg("level"),
           py::arg("point"))
      .def("sigma", &HyperbolicFilling::sigma)
      .def("scale_factor", &HyperbolicFilling::scale_factor)
      .def("truncation_bound", &HyperbolicFilling::truncation_bound)
      .def("total_mass", &HyperbolicFilling::total_mass)
      .def("unif_distance", &HyperbolicFilling::unif_distance, py::arg("a"),
           py::arg("b"))
      .def("unif_diameter", &HyperbolicFilling::unif_diameter)
      .def("boundary_ray", &HyperbolicFilling::boundary_ray, py::arg("point"))
      .def("connected", &HyperbolicFilling::connected);
  m.def("mu_beta_ball", &mu_beta_ball, py::arg("filling"), py::arg("center"),
        py::arg("radius"), py::arg("subdiv") = 8);

  py::class_<FillingCheck>(m, "FillingCheck")
      .def_readonly("connected", &FillingCheck::connected)
      .def_readonly("depth_equals_level", &FillingCheck::depth_equals_level)
      .def_readonly("sigma", &FillingCheck::sigma)
      .def_readonly("truncation_bound", &FillingCheck::truncation_bound)
      .def_readonly("doubling_max", &FillingCheck::doubling_max)
      .def_readonly("codim_lo", &FillingCheck::codim_lo)
      .def_readonly("codim_hi", &FillingCheck::codim_hi)
      .def_readonly("codim_skipped", &FillingCheck::codim_skipped)
      .def_readonly("bilip_lo", &FillingCheck::bilip_lo)
      .def_readonly("bilip_hi", &FillingCheck::bilip_hi);
  m.def(
      "verify_filling",
      [](const HyperbolicFilling& fill, const std::vector<int>& pts,
         const std::vector<double>& doubling_radii,
         const std::vector<double>& codim_radii, int subdiv) {
        FillingCheckOptions opt;
        opt.doubling_radii = doubling_radii;
        opt.codim_radii = codim_radii;
        opt.subdiv = subdiv;
        return verify_filling(fill, pts, opt);
      },
      py::arg("filling"), py::arg("boundary_points"),
      py::arg("doubling_radii") = std::vector<double>{},
      py::arg("codim_radii") = std::vector<double>{}, py::arg("subdiv") = 8);

  py::class_<ComposedTraceResult>(m, "ComposedTraceResult")
      .def_readonly("scale_factor", &ComposedTraceResult::scale_factor)
      .def_readonly("beta", &ComposedTraceResult::beta)
      .def_readonly("sigma", &ComposedTraceResult::sigma)
      .def_readonly("vertex_count", &ComposedTraceResult::vertex_count)
      .def_readonly("sample_count", &ComposedTraceResult::sample_count)
      .def_readonly("dropped_samples", &ComposedTraceResult::dropped_samples)
      .def_readonly("composed_values", &ComposedTraceResult::composed_values)
      .def_readonly("direct_values", &ComposedTraceResult::direct_values)
      .def_readonly("max_disagreement", &ComposedTraceResult::max_disagreement)
      .def_readonly("tolerance", &ComposedTraceResult::tolerance)
      .def_readonly("agree", &ComposedTraceResult::agree);
  m.def(
      "composed_trace",
      [](const Domain& dom, const std::vector<double>& u, const BesovParams& bp,
         int levels, int subdiv) {
        require_size(u, dom.space().size(), "u");
        ComposedTraceParams cp;
        cp.besov = bp;
        cp.levels = levels;
        cp.subdiv = subdiv;
        return composed_trace(dom, u, cp);
      },
      py::arg("domain"), py::arg("u"), py::arg("params"), py::arg("levels") = 5,
      py::arg("subdiv") = 4,
      "Trace through a hyperbolic filling, compared against the direct trace");
}
