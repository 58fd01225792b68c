#include "qwt/filters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qwt/errors.hpp"

namespace qwt {

namespace {

// Daubechies coefficient table, minimum-phase convention, h_0 > 0.
// Frozen to shortest-roundtrip doubles; every entry is gated by
// validate_filter in the test suite.
const std::vector<double> kDb1 = {
    0.7071067811865476,
    0.7071067811865476,
};
const std::vector<double> kDb2 = {
    0.48296291314453416,
    0.8365163037378079,
    0.2241438680420134,
    -0.12940952255126037,
};
const std::vector<double> kDb3 = {
    0.33267055295008263,
    0.8068915093110925,
    0.45987750211849154,
    -0.13501102001025458,
    -0.08544127388202666,
    0.03522629188570953,
};
const std::vector<double> kDb4 = {
    0.2303778133088965,
    0.7148465705529157,
    0.6308807679298589,
    -0.027983769416859854,
    -0.18703481171909309,
    0.030841381835560764,
    0.0328830116668852,
    -0.010597401785069032,
};
const std::vector<double> kDb5 = {
    0.16010239797419293,
    0.6038292697971896,
    0.7243085284377729,
    0.13842814590132074,
    -0.24229488706638203,
    -0.032244869584638375,
    0.07757149384004572,
    -0.006241490212798274,
    -0.012580751999081999,
    0.0033357252854737712,
};
const std::vector<double> kDb6 = {
    0.11154074335010947,
    0.49462389039845306,
    0.7511339080210954,
    0.31525035170919763,
    -0.22626469396543983,
    -0.12976686756726194,
    0.09750160558732304,
    0.027522865530305727,
    -0.03158203931748603,
    0.0005538422011614961,
    0.004777257510945511,
    -0.0010773010853084796,
};
const std::vector<double> kDb7 = {
    0.07785205408500918,
    0.3965393194819173,
    0.7291320908462351,
    0.4697822874051931,
    -0.14390600392856498,
    -0.22403618499387498,
    0.07130921926683026,
    0.08061260915108308,
    -0.03802993693501441,
    -0.01657454163066688,
    0.01255099855609984,
    0.0004295779729213665,
    -0.0018016407040474908,
    0.00035371379997452024,
};
const std::vector<double> kDb8 = {
    0.05441584224310401,
    0.31287159091429995,
    0.6756307362972898,
    0.5853546836542067,
    -0.015829105256349306,
    -0.2840155429615469,
    0.0004724845739132828,
    0.12874742662047847,
    -0.017369301001807547,
    -0.044088253930794755,
    0.013981027917398282,
    0.008746094047405777,
    -0.004870352993451574,
    -0.00039174037337694705,
    0.0006754494064505693,
    -0.00011747678412476953,
};
const std::vector<double> kDb9 = {
    0.038077947363878345,
    0.24383467461259034,
    0.6048231236901112,
    0.6572880780513005,
    0.13319738582500756,
    -0.2932737832791749,
    -0.09684078322297646,
    0.14854074933810638,
    0.03072568147933338,
    -0.06763282906132997,
    0.00025094711483145197,
    0.022361662123679096,
    -0.004723204757751397,
    -0.00428150368246343,
    0.0018476468830562265,
    0.00023038576352319597,
    -0.0002519631889427101,
    3.93473203162716e-05,
};
const std::vector<double> kDb10 = {
    0.026670057900555554,
    0.1881768000776915,
    0.5272011889317256,
    0.6884590394536035,
    0.2811723436605775,
    -0.24984642432731538,
    -0.19594627437737705,
    0.12736934033579325,
    0.09305736460357235,
    -0.07139414716639708,
    -0.029457536821875813,
    0.033212674059341,
    0.0036065535669561697,
    -0.010733175483330575,
    0.001395351747052901,
    0.001992405295185056,
    -0.0006858566949597116,
    -0.00011646685512928545,
    9.358867032006959e-05,
    -1.3264202894521244e-05,
};

struct RegistryEntry {
  const char* name;
  const std::vector<double>* coeffs;
};

const RegistryEntry kRegistry[] = {
    {"haar", &kDb1}, {"db1", &kDb1}, {"db2", &kDb2},  {"db3", &kDb3},
    {"db4", &kDb4},  {"db5", &kDb5}, {"db6", &kDb6},  {"db7", &kDb7},
    {"db8", &kDb8},  {"db9", &kDb9}, {"db10", &kDb10},
};

constexpr double kValidationTol = 1e-10;
constexpr double kFactorizationTol = 1e-8;

std::string joined_registry_names() {
  std::string out;
  for (const auto& e : kRegistry) {
    if (!out.empty()) out += ", ";
    out += e.name;
  }
  return out;
}

// Anchor row of rotation layer l in the padded window.
int layer_anchor(int m, int l) { return (1 << (m - 1)) - 1 - l; }

void apply_layer(std::vector<double>& v, int m, int l, double theta,
                 bool invert) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const int base = layer_anchor(m, l);
  for (int r = 0; r <= l; ++r) {
    double& a = v[base + 2 * r];
    double& b = v[base + 2 * r + 1];
    const double a0 = a;
    const double b0 = b;
    if (!invert) {
      a = c * a0 + s * b0;
      b = -s * a0 + c * b0;
    } else {
      a = c * a0 - s * b0;
      b = s * a0 + c * b0;
    }
  }
}

}  // namespace

const std::vector<std::string>& registry_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kRegistry) v.push_back(e.name);
    return v;
  }();
  return names;
}

ValidationReport validate_filter(const std::vector<double>& coeffs) {
  ValidationReport rep;
  const int M = static_cast<int>(coeffs.size());
  if (M == 0) {
    rep.reason = "empty coefficient list";
    return rep;
  }
  double sum = 0.0;
  double sumsq = 0.0;
  for (double h : coeffs) {
    sum += h;
    sumsq += h * h;
  }
  rep.sum_residual = std::abs(sum - std::sqrt(2.0));
  rep.sumsq_residual = std::abs(sumsq - 1.0);
  rep.shift_residual = 0.0;
  for (int k = 1; 2 * k < M; ++k) {
    double dot = 0.0;
    for (int l = 0; l + 2 * k < M; ++l) dot += coeffs[l] * coeffs[l + 2 * k];
    rep.shift_residual = std::max(rep.shift_residual, std::abs(dot));
  }
  if (M % 2 != 0) {
    rep.odd_length = true;
    rep.reason = "coefficient count must be even, got " + std::to_string(M);
    return rep;
  }
  if (rep.sum_residual > kValidationTol) {
    rep.reason = "coefficient sum differs from sqrt(2) by " +
                 std::to_string(rep.sum_residual);
    return rep;
  }
  if (rep.sumsq_residual > kValidationTol) {
    rep.reason = "squared-coefficient sum differs from 1 by " +
                 std::to_string(rep.sumsq_residual);
    return rep;
  }
  if (rep.shift_residual > kValidationTol) {
    rep.reason = "double-shift orthogonality residual " +
                 std::to_string(rep.shift_residual);
    return rep;
  }
  rep.pass = true;
  return rep;
}

WaveletFilter make_filter(std::string name, std::vector<double> coeffs) {
  ValidationReport rep = validate_filter(coeffs);
  if (!rep.pass) {
    throw InvalidFilterError("filter '" + name + "' rejected: " + rep.reason);
  }
  WaveletFilter f;
  f.name = std::move(name);
  f.order = static_cast<int>(coeffs.size());
  f.index = f.order / 2;
  f.coeffs = std::move(coeffs);
  return f;
}

WaveletFilter builtin_filter(const std::string& name) {
  for (const auto& e : kRegistry) {
    if (name == e.name) return make_filter(e.name, *e.coeffs);
  }
  throw UnknownFilterError("unknown filter '" + name +
                           "'; available: " + joined_registry_names());
}

WaveletFilter load_filter_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open filter file: " + path);
  std::vector<double> coeffs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // trim whitespace; blank lines are skipped
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw IoError(path + ":" + std::to_string(lineno) +
                    ": not a real number: '" + tok + "'");
    }
    if (used != tok.size()) {
      throw IoError(path + ":" + std::to_string(lineno) +
                    ": trailing characters after number: '" + tok + "'");
    }
    coeffs.push_back(v);
  }
  if (coeffs.empty()) throw IoError("filter file has no coefficients: " + path);
  return make_filter(std::filesystem::path(path).stem().string(),
                     std::move(coeffs));
}

WaveletFilter resolve_filter(const std::string& name) {
  for (const auto& e : kRegistry) {
    if (name == e.name) return make_filter(e.name, *e.coeffs);
  }
  if (const char* dir = std::getenv("QWT_REGISTRY_PATH")) {
    const std::filesystem::path p =
        std::filesystem::path(dir) / (name + ".txt");
    if (std::filesystem::exists(p)) {
      WaveletFilter f = load_filter_file(p.string());
      f.name = name;
      return f;
    }
  }
  throw UnknownFilterError("unknown filter '" + name +
                           "'; available: " + joined_registry_names() +
                           " (or <name>.txt under QWT_REGISTRY_PATH)");
}

double one_norm(const WaveletFilter& f) {
  double h = 0.0;
  for (double c : f.coeffs) h += std::abs(c);
  return h;
}

int padded_qubits(const WaveletFilter& f) {
  int m = 1;
  while ((1 << m) < f.order) ++m;
  return m;
}

double success_amplitude_sqrt(const WaveletFilter& f) {
  return 1.0 / one_norm(f);
}

double success_amplitude_linear(const WaveletFilter& f) {
  return std::pow(2.0, -0.5 * padded_qubits(f));
}

RotationCascade extract_rotation_angles(const WaveletFilter& f) {
  const int M = f.order;
  const int K = f.index;
  const int m = padded_qubits(f);
  const int dim = 1 << m;
  const int pad = (dim - M) / 2;

  std::vector<double> v(dim, 0.0);
  for (int i = 0; i < M; ++i) v[pad + i] = f.coeffs[i];

  RotationCascade cas;
  cas.padded_width = m;
  cas.pad = pad;
  cas.angles.assign(K, 0.0);

  // Back-substitution: each inverse layer must zero the entry at its anchor.
  for (int l = K - 1; l >= 0; --l) {
    const int base = layer_anchor(m, l);
    double theta = std::atan2(v[base], v[base + 1]);
    if (theta <= -M_PI) theta = M_PI;
    cas.angles[l] = theta;
    apply_layer(v, m, l, theta, /*invert=*/true);
  }

  const int mid = 1 << (m - 1);
  double resid = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double want = (i == mid) ? 1.0 : 0.0;
    resid = std::max(resid, std::abs(v[i] - want));
  }
  if (resid > kFactorizationTol) {
    std::ostringstream os;
    os << "rotation-cascade back-substitution residual " << resid
       << " for filter '" << f.name << "'";
    throw FactorizationError(os.str());
  }
  return cas;
}

std::vector<double> reconstruct_from_angles(const RotationCascade& c) {
  const int m = c.padded_width;
  if (m < 1 || c.angles.empty()) {
    throw DimensionError("rotation cascade needs width >= 1 and >= 1 angle");
  }
  const int dim = 1 << m;
  std::vector<double> v(dim, 0.0);
  v[1 << (m - 1)] = 1.0;
  for (int l = 0; l < static_cast<int>(c.angles.size()); ++l) {
    apply_layer(v, m, l, c.angles[l], /*invert=*/false);
  }
  return v;
}

}  // namespace qwt
