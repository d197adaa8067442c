#include "flowcap/serialize.hpp"

#include <json.hpp>

namespace flowcap {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& M) {
  json a = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) a.push_back(M(i, j));
  return a;
}

Eigen::MatrixXd matrix_from_json(const json& a, int d) {
  if (!a.is_array() || static_cast<int>(a.size()) != d * d)
    throw Error("serialize: matrix must hold d*d row-major entries");
  Eigen::MatrixXd M(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) M(i, j) = a[k++].get<double>();
  return M;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vector_from_json(const json& a, int d) {
  if (!a.is_array() || static_cast<int>(a.size()) != d)
    throw Error("serialize: vector length mismatch");
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v[i] = a[i].get<double>();
  return v;
}

json activation_to_json(const Activation& act) {
  json j;
  j["type"] = act.name();
  switch (act.type()) {
    case ActivationType::LeakyReLU: j["slope"] = act.param0(); break;
    case ActivationType::Softplus: j["sharpness"] = act.param0(); break;
    case ActivationType::MonomialPower:
      j["power"] = static_cast<int>(act.param0());
      break;
    case ActivationType::Gaussian:
      j["center"] = act.param0();
      j["width"] = act.param1();
      break;
    default: break;
  }
  return j;
}

Activation activation_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "relu") return Activation::relu();
  if (type == "neg_relu") return Activation::neg_relu();
  if (type == "leaky_relu")
    return Activation::leaky_relu(j.at("slope").get<double>());
  if (type == "softplus")
    return Activation::softplus(j.at("sharpness").get<double>());
  if (type == "sin") return Activation::sin();
  if (type == "cos") return Activation::cos();
  if (type == "monomial") return Activation::monomial(j.at("power").get<int>());
  if (type == "gaussian")
    return Activation::gaussian(j.at("center").get<double>(),
                                j.at("width").get<double>());
  if (type == "quadratic") return Activation::quadratic();
  throw Error("serialize: unknown activation type " + type);
}

json field_to_json_obj(const VectorField& f) {
  json j;
  j["dim"] = f.dim();
  switch (f.kind()) {
    case FieldKind::Affine:
      j["kind"] = "affine";
      j["matrix"] = matrix_to_json(f.affine_matrix());
      j["offset"] = vector_to_json(f.affine_offset());
      break;
    case FieldKind::Separable: {
      j["kind"] = "separable";
      j["activation"] = activation_to_json(f.activation());
      json flags = json::array();
      for (bool b : f.flags()) flags.push_back(b);
      j["flags"] = flags;
      break;
    }
    case FieldKind::Conjugated:
      j["kind"] = "conjugated";
      j["outer"] = matrix_to_json(f.conj_outer());
      j["inner"] = matrix_to_json(f.conj_inner());
      j["shift"] = vector_to_json(f.conj_shift());
      j["base"] = field_to_json_obj(f.base());
      break;
    case FieldKind::Sum: {
      j["kind"] = "sum";
      json terms = json::array();
      for (const auto& [c, g] : f.terms())
        terms.push_back(json{{"coeff", c}, {"field", field_to_json_obj(g)}});
      j["terms"] = terms;
      break;
    }
    case FieldKind::Named:
      j["kind"] = "named";
      j["id"] = to_string(f.named_id());
      break;
  }
  return j;
}

VectorField field_from_json_obj(const json& j) {
  const int d = j.at("dim").get<int>();
  if (d < 1) throw Error("serialize: dim must be positive");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "affine")
    return VectorField::affine(matrix_from_json(j.at("matrix"), d),
                               vector_from_json(j.at("offset"), d));
  if (kind == "separable") {
    const json& fl = j.at("flags");
    if (static_cast<int>(fl.size()) != d)
      throw Error("serialize: flags length mismatch");
    std::vector<bool> flags(d);
    for (int i = 0; i < d; ++i) flags[i] = fl[i].get<bool>();
    return VectorField::separable(activation_from_json(j.at("activation")),
                                  std::move(flags));
  }
  if (kind == "conjugated")
    return VectorField::conjugated(matrix_from_json(j.at("outer"), d),
                                   matrix_from_json(j.at("inner"), d),
                                   vector_from_json(j.at("shift"), d),
                                   field_from_json_obj(j.at("base")));
  if (kind == "sum") {
    std::vector<std::pair<double, VectorField>> terms;
    for (const json& t : j.at("terms"))
      terms.emplace_back(t.at("coeff").get<double>(),
                         field_from_json_obj(t.at("field")));
    return VectorField::sum(std::move(terms));
  }
  if (kind == "named") return VectorField::named(j.at("id").get<std::string>(), d);
  throw Error("serialize: unknown field kind " + kind);
}

std::string dump(const json& j, int indent) {
  return indent < 0 ? j.dump() : j.dump(indent);
}

}  // namespace

std::string field_to_json(const VectorField& f, int indent) {
  return dump(field_to_json_obj(f), indent);
}

VectorField field_from_json(const std::string& text) {
  return field_from_json_obj(json::parse(text));
}

std::string program_to_json(const FlowProgram& p, int indent) {
  json j;
  j["dim"] = p.dim();
  json legs = json::array();
  for (const auto& leg : p.legs())
    legs.push_back(json{
        {"field", field_to_json_obj(leg.field)},
        {"duration", leg.duration},
        {"direction",
         leg.direction == LegDirection::Forward ? "forward" : "backward"}});
  j["legs"] = legs;
  return dump(j, indent);
}

FlowProgram program_from_json(const std::string& text) {
  const json j = json::parse(text);
  FlowProgram p(j.at("dim").get<int>());
  for (const json& leg : j.at("legs")) {
    const std::string dir = leg.at("direction").get<std::string>();
    if (dir != "forward" && dir != "backward")
      throw Error("serialize: leg direction must be forward or backward");
    p.append(field_from_json_obj(leg.at("field")),
             leg.at("duration").get<double>(),
             dir == "forward" ? LegDirection::Forward : LegDirection::Backward);
  }
  return p;
}

std::string box_to_json(const Box& b, int indent) {
  json j;
  j["lower"] = vector_to_json(b.lower);
  j["upper"] = vector_to_json(b.upper);
  return dump(j, indent);
}

Box box_from_json(const std::string& text) {
  const json j = json::parse(text);
  const int d = static_cast<int>(j.at("lower").size());
  return Box(vector_from_json(j.at("lower"), d),
             vector_from_json(j.at("upper"), d));
}

}  // namespace flowcap
