#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "flowcap/rng.hpp"
#include "flowcap/serialize.hpp"

using namespace flowcap;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// generator for random field trees of bounded depth
VectorField random_field(SeededRng& rng, int dim, int depth) {
  const int pick = static_cast<int>(rng.uniform(0, depth > 0 ? 5 : 3));
  switch (pick) {
    case 0: {
      MatrixXd A(dim, dim);
      VectorXd b(dim);
      for (int i = 0; i < dim; ++i) {
        b[i] = rng.uniform(-2, 2);
        for (int j = 0; j < dim; ++j) A(i, j) = rng.uniform(-2, 2);
      }
      return VectorField::affine(A, b);
    }
    case 1: {
      const int which = static_cast<int>(rng.uniform(0, 6));
      Activation act = Activation::relu();
      switch (which) {
        case 0: act = Activation::relu(); break;
        case 1: act = Activation::neg_relu(); break;
        case 2: act = Activation::softplus(rng.uniform(0.5, 8)); break;
        case 3: act = Activation::sin(); break;
        case 4: act = Activation::monomial(2 + (int)rng.uniform(0, 3)); break;
        default: act = Activation::gaussian(rng.uniform(-1, 1), rng.uniform(0.5, 2));
      }
      std::vector<bool> flags(dim);
      bool any = false;
      for (int i = 0; i < dim; ++i) {
        flags[i] = rng.uniform() < 0.7;
        any = any || flags[i];
      }
      if (!any) flags[0] = true;
      return VectorField::separable(act, flags);
    }
    case 2:
      return dim == 2 ? VectorField::named(rng.uniform() < 0.5
                                               ? NamedField::PermuteRelu
                                               : NamedField::SinSum,
                                           2)
                      : VectorField::named(NamedField::Gauss, dim);
    case 3: {
      MatrixXd S(dim, dim), W(dim, dim);
      VectorXd c(dim);
      for (int i = 0; i < dim; ++i) {
        c[i] = rng.uniform(-1, 1);
        for (int j = 0; j < dim; ++j) {
          S(i, j) = rng.uniform(-1, 1);
          W(i, j) = rng.uniform(-1, 1);
        }
      }
      return VectorField::conjugated(S, W, c, random_field(rng, dim, depth - 1));
    }
    default: {
      std::vector<std::pair<double, VectorField>> terms;
      const int n = 1 + static_cast<int>(rng.uniform(0, 3));
      for (int i = 0; i < n; ++i)
        terms.emplace_back(rng.uniform(-2, 2), random_field(rng, dim, depth - 1));
      return VectorField::sum(std::move(terms));
    }
  }
}

}  // namespace

TEST_CASE("field round trip preserves structure and evaluation") {
  SeededRng rng(2718);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = 1 + trial % 3;
    const VectorField f = random_field(rng, dim, 2);
    const VectorField g = field_from_json(field_to_json(f));
    REQUIRE(f == g);
    for (int i = 0; i < 5; ++i) {
      VectorXd x(dim);
      for (int k = 0; k < dim; ++k) x[k] = rng.uniform(-2, 2);
      REQUIRE(eval_field(f, x) == eval_field(g, x));
    }
  }
}

TEST_CASE("serialization is byte-stable") {
  SeededRng rng(31415);
  const VectorField f = random_field(rng, 2, 2);
  CHECK(field_to_json(f) == field_to_json(f));
  const VectorField g = field_from_json(field_to_json(f));
  CHECK(field_to_json(f) == field_to_json(g));
}

TEST_CASE("program round trip") {
  SeededRng rng(99);
  FlowProgram p(2);
  for (int i = 0; i < 6; ++i)
    p.append(random_field(rng, 2, 1), rng.uniform(0, 1),
             rng.uniform() < 0.5 ? LegDirection::Forward
                                 : LegDirection::Backward);
  const FlowProgram q = program_from_json(program_to_json(p));
  REQUIRE(q.size() == p.size());
  REQUIRE(q.dim() == p.dim());
  for (std::size_t i = 0; i < p.size(); ++i) {
    REQUIRE(p.legs()[i].field == q.legs()[i].field);
    REQUIRE(p.legs()[i].duration == q.legs()[i].duration);
    REQUIRE(p.legs()[i].direction == q.legs()[i].direction);
  }
}

TEST_CASE("box round trip") {
  const Box b = Box::centered(3, 2.5);
  const Box c = box_from_json(box_to_json(b));
  CHECK(b.lower == c.lower);
  CHECK(b.upper == c.upper);
}

TEST_CASE("malformed documents raise") {
  REQUIRE_THROWS(field_from_json("{\"dim\": 2, \"kind\": \"mystery\"}"));
  REQUIRE_THROWS(field_from_json("{\"dim\": -1, \"kind\": \"named\", \"id\": \"gauss\"}"));
  REQUIRE_THROWS(program_from_json(
      "{\"dim\": 1, \"legs\": [{\"field\": {\"dim\": 1, \"kind\": \"named\", "
      "\"id\": \"gauss\"}, \"duration\": 1.0, \"direction\": \"sideways\"}]}"));
}
