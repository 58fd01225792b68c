#include "qwt/lowering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "qwt/errors.hpp"

namespace qwt {
namespace {

// Clean helper wires the rewriter may rely on. flag/kick stay |0> outside a
// gate's expansion; carry and the load register are |0> outside the adders.
struct Helpers {
  int flag = -1;
  int kick = -1;
  int carry = -1;
  std::vector<int> load;
};

int bit_width(std::uint64_t v) { return v == 0 ? 0 : std::bit_width(v); }

Gate promote_all(Gate g, const std::vector<Control>& cs) {
  for (const Control& c : cs) g = controlled(g, c.qubit, c.polarity);
  return g;
}

struct Rewriter {
  int width = 0;
  Helpers help;
  McxStrategy strategy = McxStrategy::borrow_many;
  std::vector<Gate> out;

  void emit(Gate g) { out.push_back(std::move(g)); }

  // Lowest-index wires outside `used`; every construction that borrows
  // restores arbitrary borrowed states, so any free wire qualifies.
  std::vector<int> borrow(const std::vector<int>& used, int count) const {
    std::vector<char> busy(width, 0);
    for (int w : used) busy[w] = 1;
    std::vector<int> picked;
    for (int w = 0; w < width && static_cast<int>(picked.size()) < count; ++w) {
      if (!busy[w]) picked.push_back(w);
    }
    if (static_cast<int>(picked.size()) < count) {
      throw LoweringError("not enough free wires to borrow");
    }
    return picked;
  }

  void tag(std::size_t from, const std::vector<int>& borrowed) {
    for (std::size_t i = from; i < out.size(); ++i) {
      const std::vector<int> sup = gate_support(out[i]);
      for (int w : borrowed) {
        if (std::find(sup.begin(), sup.end(), w) == sup.end()) continue;
        std::vector<int>& b = out[i].borrowed;
        if (std::find(b.begin(), b.end(), w) == b.end()) b.push_back(w);
      }
    }
  }

  void gate(const Gate& g);

  void mcx(const std::vector<int>& ctrls, int t);
  void mcx_ladder(const std::vector<int>& ctrls, int t,
                  const std::vector<int>& br);
  void mcx_split(const std::vector<int>& ctrls, int t);
  void zfam(int t, const std::vector<int>& ctrls);
  void adder(const std::vector<int>& b, const std::vector<int>& a, int q,
             bool subtract);
  void const_add(const Gate& g);
  void increment(const Gate& g, bool dec);
  void ucry(const Gate& g);
  void reflection(const Gate& g);
  void prep(const Gate& g);
  std::vector<Gate> prep_rounds(const std::vector<double>& p,
                                const std::vector<int>& anc) const;
};

void Rewriter::mcx(const std::vector<int>& ctrls, int t) {
  const int k = static_cast<int>(ctrls.size());
  if (k == 0) {
    emit(g_not(t));
  } else if (k == 1) {
    emit(g_cnot(ctrls[0], t));
  } else if (k == 2) {
    emit(g_toffoli(ctrls[0], ctrls[1], t));
  } else if (strategy == McxStrategy::borrow_many) {
    std::vector<int> used = ctrls;
    used.push_back(t);
    mcx_ladder(ctrls, t, borrow(used, k - 2));
  } else {
    mcx_split(ctrls, t);
  }
}

// Toffoli ladder over k-2 borrowed wires; the second half restores them for
// every borrowed input state.
void Rewriter::mcx_ladder(const std::vector<int>& ctrls, int t,
                          const std::vector<int>& br) {
  const int k = static_cast<int>(ctrls.size());
  const std::size_t from = out.size();
  auto rung = [&](int i) {
    emit(g_toffoli(ctrls[i], br[i - 2], i == k - 1 ? t : br[i - 1]));
  };
  for (int i = k - 1; i >= 2; --i) rung(i);
  emit(g_toffoli(ctrls[0], ctrls[1], br[0]));
  for (int i = 2; i <= k - 1; ++i) rung(i);
  for (int i = k - 2; i >= 2; --i) rung(i);
  emit(g_toffoli(ctrls[0], ctrls[1], br[0]));
  for (int i = 2; i <= k - 2; ++i) rung(i);
  tag(from, br);
}

// Balanced split through one borrowed wire: with halves A|B and borrowed w,
// [A->w][Bw->t][A->w][Bw->t] flips t by AND(A)AND(B) for any initial w.
void Rewriter::mcx_split(const std::vector<int>& ctrls, int t) {
  const int k = static_cast<int>(ctrls.size());
  std::vector<int> used = ctrls;
  used.push_back(t);
  const int w = borrow(used, 1)[0];
  const int k1 = (k + 1) / 2;
  const std::vector<int> first(ctrls.begin(), ctrls.begin() + k1);
  std::vector<int> second(ctrls.begin() + k1, ctrls.end());

  // sub-ladders borrow from the opposite half so only w is external
  auto half1 = [&] {
    if (k1 <= 2) {
      mcx(first, w);
      return;
    }
    std::vector<int> pool = second;
    pool.push_back(t);
    pool.resize(k1 - 2);
    mcx_ladder(first, w, pool);
  };
  std::vector<int> second_w = second;
  second_w.push_back(w);
  auto half2 = [&] {
    const int k2 = static_cast<int>(second_w.size());
    if (k2 <= 2) {
      mcx(second_w, t);
      return;
    }
    std::vector<int> pool = first;
    pool.resize(k2 - 2);
    mcx_ladder(second_w, t, pool);
  };
  const std::size_t from = out.size();
  half1();
  half2();
  half1();
  half2();
  tag(from, {w});
}

void Rewriter::zfam(int t, const std::vector<int>& ctrls) {
  if (ctrls.empty()) {
    emit(g_z(t));
  } else if (ctrls.size() == 1) {
    emit(g_cz(ctrls[0], t));
  } else {
    emit(g_h(t));
    mcx(ctrls, t);
    emit(g_h(t));
  }
}

// Ripple-carry a+b mod 2^n in place on b. The addend may be narrower; the
// final carry out of its top bit drives a borrowed-wire increment of the
// high part, so no zero-extension wires are needed. With a control q the
// unmajority step writes the sum only when q is set; the majority sweep is
// unconditional and undone either way.
void Rewriter::adder(const std::vector<int>& b, const std::vector<int>& a,
                     int q, bool subtract) {
  if (help.carry < 0) throw LoweringError("adder needs a clean carry wire");
  const int n = static_cast<int>(b.size());
  const int m = static_cast<int>(a.size());
  const int z = help.carry;
  const std::size_t from = out.size();

  for (int i = 0; i < m; ++i) {
    const int c = i == 0 ? z : a[i - 1];
    emit(g_cnot(a[i], b[i]));
    emit(g_cnot(a[i], c));
    emit(g_toffoli(c, b[i], a[i]));
  }
  if (m < n) {
    Gate inc;
    inc.kind = GateKind::INC;
    inc.targets.assign(b.begin() + m, b.end());
    inc.controls.push_back({a[m - 1], true});
    if (q >= 0) inc.controls.push_back({q, true});
    gate(inc);
  }
  for (int i = m - 1; i >= 0; --i) {
    const int c = i == 0 ? z : a[i - 1];
    emit(g_toffoli(c, b[i], a[i]));
    emit(g_cnot(a[i], c));
    if (q < 0) {
      emit(g_cnot(c, b[i]));
    } else {
      emit(g_cnot(a[i], b[i]));
      emit(g_cnot(c, a[i]));
      emit(g_toffoli(q, a[i], b[i]));
      emit(g_cnot(c, a[i]));
    }
  }
  // every emitted gate is its own inverse, so reversing the range subtracts
  if (subtract) std::reverse(out.begin() + static_cast<long>(from), out.end());
}

void Rewriter::const_add(const Gate& g) {
  const int n = static_cast<int>(g.targets.size());
  const std::uint64_t span = std::uint64_t{1} << n;
  std::uint64_t c = g.constant % span;
  if (c == 0) return;
  bool subtract = false;
  if (c > span - c) {  // adding c == subtracting the smaller complement
    c = span - c;
    subtract = true;
  }
  const int mw = bit_width(c);
  if (static_cast<int>(help.load.size()) < mw) {
    throw LoweringError("constant adder needs a load register");
  }
  const std::vector<int> a(help.load.begin(), help.load.begin() + mw);
  const int q = g.controls.empty() ? -1 : g.controls[0].qubit;
  for (int i = 0; i < mw; ++i) {
    if ((c >> i) & 1) emit(g_not(a[i]));
  }
  adder(g.targets, a, q, subtract);
  for (int i = 0; i < mw; ++i) {
    if ((c >> i) & 1) emit(g_not(a[i]));
  }
}

// |l> -> |l+1 mod 2^m> via two borrowed-register subtractions: subtracting
// g and then its bit-complement takes off 2^m - 1, i.e. adds one. Works and
// restores for arbitrary borrowed states.
void Rewriter::increment(const Gate& g, bool dec) {
  const int m = static_cast<int>(g.targets.size());
  if (m == 1) {
    Gate x = g_not(g.targets[0]);
    x.controls = g.controls;
    gate(x);
    return;
  }
  const std::vector<int>& t = g.targets;
  const std::vector<int> br = borrow(gate_support(g), m);

  std::vector<Gate> add;  // carry-free ripple add: t += br, br untouched
  for (int i = 1; i < m; ++i) add.push_back(g_cnot(br[i], t[i]));
  for (int i = m - 2; i >= 1; --i) add.push_back(g_cnot(br[i], br[i + 1]));
  for (int i = 0; i <= m - 2; ++i)
    add.push_back(g_toffoli(br[i], t[i], br[i + 1]));
  for (int i = m - 1; i >= 1; --i) {
    add.push_back(g_cnot(br[i], t[i]));
    add.push_back(g_toffoli(br[i - 1], t[i - 1], br[i]));
  }
  for (int i = 1; i <= m - 2; ++i) add.push_back(g_cnot(br[i], br[i + 1]));
  for (int i = 0; i < m; ++i) add.push_back(g_cnot(br[i], t[i]));

  std::vector<Gate> seq;
  for (auto it = add.rbegin(); it != add.rend(); ++it) seq.push_back(*it);
  for (int i = 0; i < m; ++i) seq.push_back(g_not(br[i]));
  for (auto it = add.rbegin(); it != add.rend(); ++it) seq.push_back(*it);
  for (int i = 0; i < m; ++i) seq.push_back(g_not(br[i]));
  if (dec) std::reverse(seq.begin(), seq.end());

  const std::size_t from = out.size();
  for (const Gate& s : seq) {
    if (g.controls.empty()) {
      emit(s);
    } else {
      gate(promote_all(s, g.controls));
    }
  }
  tag(from, br);
}

// Uniformly controlled rotation as a rotation/CNOT chain in Gray-code order.
void Rewriter::ucry(const Gate& g) {
  const int m = static_cast<int>(g.operand.size());
  const int t = g.targets[0];
  if (m == 0) {
    Gate r = g_ry(2.0 * g.angles[0], t);
    r.controls = g.controls;
    gate(r);
    return;
  }
  const int dim = 1 << m;
  std::vector<Gate> seq;
  for (int i = 0; i < dim; ++i) {
    const unsigned gray = static_cast<unsigned>(i) ^ (static_cast<unsigned>(i) >> 1);
    double phi = 0.0;
    for (int b = 0; b < dim; ++b) {
      const int sign =
          (std::popcount(static_cast<unsigned>(b) & gray) & 1) ? -1 : 1;
      phi += sign * 2.0 * g.angles[static_cast<std::size_t>(b)];
    }
    seq.push_back(g_ry(phi / dim, t));
    const int sel = i == dim - 1 ? m - 1 : std::countr_zero(static_cast<unsigned>(i) + 1);
    seq.push_back(g_cnot(g.operand[sel], t));
  }
  for (const Gate& s : seq) {
    if (g.controls.empty() && is_elementary(s.kind)) {
      emit(s);
    } else {
      gate(promote_all(s, g.controls));
    }
  }
}

// Phase-kickback form: X-conjugated controlled-Z onto one clean workspace
// wire. Standalone it realizes -(2|0..0><0..0| - I) on the target block with
// the workspace in |0>; the -1 is a pure global phase there, and in every
// amplification round it cancels against the round's marker sign.
void Rewriter::reflection(const Gate& g) {
  if (help.kick < 0) throw LoweringError("reflection needs a clean workspace wire");
  const int w = help.kick;
  std::vector<Gate> seq;
  for (int t : g.targets) seq.push_back(g_not(t));
  seq.push_back(g_not(w));
  seq.push_back(g_h(w));
  Gate big;
  big.kind = GateKind::MCX;
  big.targets = {w};
  for (int t : g.targets) big.controls.push_back({t, true});
  seq.push_back(big);
  seq.push_back(g_h(w));
  seq.push_back(g_not(w));
  for (int t : g.targets) seq.push_back(g_not(t));
  for (const Gate& s : seq) {
    if (g.controls.empty() && s.kind != GateKind::MCX) {
      emit(s);
    } else {
      gate(promote_all(s, g.controls));
    }
  }
}

// One amplitude-amplification round; by construction the rotation count is
// exact, so the prepared column carries no residual or phase.
std::vector<Gate> Rewriter::prep_rounds(const std::vector<double>& p,
                                        const std::vector<int>& anc) const {
  const int dim = static_cast<int>(p.size());
  double maxp = 0.0;
  for (double v : p) maxp = std::max(maxp, std::abs(v));
  if (maxp <= 0.0) throw LoweringError("degenerate preparation payload");
  const double root = std::sqrt(static_cast<double>(dim));
  const double amax = std::min(1.0, 1.0 / (root * maxp));
  const double alpha = std::asin(amax);
  int t = static_cast<int>(std::ceil((M_PI / (2.0 * alpha) - 1.0) / 2.0 - 1e-12));
  if (t < 0) t = 0;
  while (root * std::sin(M_PI / (2.0 * (2 * t + 1))) * maxp > 1.0 + 1e-9) ++t;
  const double kappa = root * std::sin(M_PI / (2.0 * (2 * t + 1)));

  Gate rot;
  rot.kind = GateKind::UCRY;
  rot.targets = {help.flag};
  rot.operand = anc;
  rot.angles.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    rot.angles[i] = std::acos(std::clamp(kappa * p[i], -1.0, 1.0));
  }

  std::vector<Gate> block;  // uniform superposition, then flag rotation
  for (int a : anc) block.push_back(g_h(a));
  block.push_back(rot);

  std::vector<Gate> seq = block;
  Gate refl;
  refl.kind = GateKind::REFLECT;
  refl.targets = anc;
  refl.targets.push_back(help.flag);
  for (int r = 0; r < t; ++r) {
    seq.push_back(g_z(help.flag));
    for (auto it = block.rbegin(); it != block.rend(); ++it) {
      seq.push_back(inverse(*it));
    }
    seq.push_back(refl);
    seq.insert(seq.end(), block.begin(), block.end());
  }
  return seq;
}

void Rewriter::prep(const Gate& g) {
  if (help.flag < 0 || help.kick < 0) {
    throw LoweringError("state-preparation macro needs two clean helper wires");
  }
  const int m = static_cast<int>(g.targets.size());
  const int dim = 1 << m;
  const bool is_prep = g.kind == GateKind::PREP_MACRO;
  std::vector<double> p(dim);
  for (int i = 0; i < dim; ++i) {
    p[i] = is_prep ? g.dense[static_cast<std::size_t>(i) * dim]
                   : g.dense[static_cast<std::size_t>(i)];
  }
  std::vector<Gate> seq = prep_rounds(p, g.targets);
  // forward means "load p onto zeros": PREP, or the inverse of UNPREP
  const bool forward = is_prep != g.inverted;
  if (!forward) {
    std::vector<Gate> rev;
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
      rev.push_back(inverse(*it));
    }
    seq = std::move(rev);
  }
  for (const Gate& s : seq) {
    gate(g.controls.empty() ? s : promote_all(s, g.controls));
  }
}

void Rewriter::gate(const Gate& g) {
  // strip negative polarities first so every later rule sees plain controls
  std::vector<int> flips;
  for (const Control& c : g.controls) {
    if (!c.polarity) flips.push_back(c.qubit);
  }
  if (!flips.empty()) {
    Gate pos = g;
    for (Control& c : pos.controls) c.polarity = true;
    for (int w : flips) emit(g_not(w));
    gate(pos);
    for (int w : flips) emit(g_not(w));
    return;
  }

  std::vector<int> cw;
  for (const Control& c : g.controls) cw.push_back(c.qubit);
  const std::size_t k = cw.size();

  switch (g.kind) {
    case GateKind::NOT:
    case GateKind::CNOT:
    case GateKind::TOFFOLI:
    case GateKind::MCX:
      mcx(cw, g.targets[0]);
      return;
    case GateKind::Z:
    case GateKind::CZ:
      zfam(g.targets[0], cw);
      return;
    case GateKind::H: {
      if (k == 0) {
        emit(g);
        return;
      }
      Gate zg = g;  // H = RY(pi/2) Z, applied Z first
      zg.kind = GateKind::Z;
      zg.angle = 0.0;
      gate(zg);
      Gate rg = g;
      rg.kind = GateKind::RY;
      rg.angle = M_PI / 2.0;
      gate(rg);
      return;
    }
    case GateKind::RY: {
      if (k == 0) {
        emit(g);
        return;
      }
      const int t = g.targets[0];
      emit(g_ry(g.angle / 2.0, t));
      mcx(cw, t);
      emit(g_ry(-g.angle / 2.0, t));
      mcx(cw, t);
      return;
    }
    case GateKind::SWAP: {
      if (k == 0) {
        emit(g);
        return;
      }
      const int a = g.targets[0];
      const int b = g.targets[1];
      for (const Gate& c : {g_cnot(a, b), g_cnot(b, a), g_cnot(a, b)}) {
        gate(promote_all(c, g.controls));
      }
      return;
    }
    case GateKind::ADD:
    case GateKind::SUB: {
      if (k >= 2) break;  // fold below
      adder(g.targets, g.operand, g.controls.empty() ? -1 : cw[0],
            g.kind == GateKind::SUB);
      return;
    }
    case GateKind::CONST_ADD: {
      if (g.constant % (std::uint64_t{1} << g.targets.size()) == 0) return;
      if (k >= 2) break;
      const_add(g);
      return;
    }
    case GateKind::INC:
    case GateKind::DEC:
      increment(g, g.kind == GateKind::DEC);
      return;
    case GateKind::SHUFFLE: {
      const int n = static_cast<int>(g.targets.size());
      std::vector<Gate> swaps;
      for (int i = 0; i + 1 < n; ++i) {
        swaps.push_back(g_swap(g.targets[i], g.targets[i + 1]));
      }
      if (g.inverted) std::reverse(swaps.begin(), swaps.end());
      for (const Gate& s : swaps) {
        if (g.controls.empty()) {
          emit(s);
        } else {
          gate(promote_all(s, g.controls));
        }
      }
      return;
    }
    case GateKind::UCRY:
      ucry(g);
      return;
    case GateKind::REFLECT:
      reflection(g);
      return;
    case GateKind::PREP_MACRO:
    case GateKind::UNPREP_MACRO:
      prep(g);
      return;
    case GateKind::LINPREP_MACRO:
      throw LoweringError(
          "linear preparation macro records no gate structure; build the "
          "explicit rotation cascade instead");
  }

  // arithmetic with several controls: collapse them onto the kick wire
  if (help.kick < 0) {
    throw LoweringError("multi-controlled arithmetic needs a workspace wire");
  }
  mcx(cw, help.kick);
  Gate inner = g;
  inner.controls = {Control{help.kick, true}};
  gate(inner);
  mcx(cw, help.kick);
}

Rewriter make_rewriter(int width, const Helpers& h, McxStrategy s) {
  Rewriter rw;
  rw.width = width;
  rw.help = h;
  rw.strategy = s;
  return rw;
}

}  // namespace

Circuit lower_mcx(const Gate& g, const RegisterLayout& layout,
                  McxStrategy strategy) {
  switch (g.kind) {
    case GateKind::NOT:
    case GateKind::CNOT:
    case GateKind::TOFFOLI:
    case GateKind::MCX:
      break;
    default:
      throw LoweringError("lower_mcx expects a NOT-family gate");
  }
  validate_gate(g, layout.width());
  Rewriter rw = make_rewriter(layout.width(), Helpers{}, strategy);
  rw.gate(g);
  Circuit c{layout, std::move(rw.out)};
  validate_circuit(c);
  return c;
}

Circuit lower_reflection(int m) {
  if (m < 1) throw LoweringError("reflection width must be at least 1");
  const int extra = std::max(0, m - 2);  // ladder borrow room
  RegisterLayout layout = RegisterLayout::raw(m + 1 + extra);
  Helpers h;
  h.kick = m;
  Rewriter rw = make_rewriter(layout.width(), h, McxStrategy::borrow_many);
  Gate g;
  g.kind = GateKind::REFLECT;
  for (int i = 0; i < m; ++i) g.targets.push_back(i);
  rw.gate(g);
  Circuit c{layout, std::move(rw.out)};
  validate_circuit(c);
  return c;
}

Circuit lower_add(int target_width, int addend_width) {
  if (target_width < 1 || addend_width < 1) {
    throw DimensionError("adder registers must be non-empty");
  }
  if (addend_width > target_width) {
    throw DimensionError("addend register wider than target");
  }
  RegisterLayout layout = RegisterLayout::raw(2 * target_width + 1);
  Gate g;
  g.kind = GateKind::ADD;
  for (int i = 0; i < target_width; ++i) g.targets.push_back(i);
  for (int i = 0; i < addend_width; ++i) g.operand.push_back(target_width + i);
  Helpers h;
  h.carry = target_width + addend_width;
  Rewriter rw = make_rewriter(layout.width(), h, McxStrategy::borrow_many);
  rw.gate(g);
  Circuit c{layout, std::move(rw.out)};
  validate_circuit(c);
  return c;
}

Circuit lower_const_add(std::uint64_t c, int n) {
  if (n < 1) throw DimensionError("target register must be non-empty");
  if (n < 64 && c >= (std::uint64_t{1} << n)) {
    throw IndexError("constant out of range for the target register");
  }
  RegisterLayout layout = RegisterLayout::raw(2 * n + 1);
  Gate g;
  g.kind = GateKind::CONST_ADD;
  g.constant = c;
  for (int i = 0; i < n; ++i) g.targets.push_back(i);
  Helpers h;
  h.carry = n;
  for (int i = n + 1; i < 2 * n + 1; ++i) h.load.push_back(i);
  Rewriter rw = make_rewriter(layout.width(), h, McxStrategy::borrow_many);
  rw.gate(g);
  Circuit cc{layout, std::move(rw.out)};
  validate_circuit(cc);
  return cc;
}

Circuit lower_shuffle(int n) {
  if (n < 2) throw LoweringError("shuffle needs at least two wires");
  RegisterLayout layout = RegisterLayout::raw(n);
  Gate g;
  g.kind = GateKind::SHUFFLE;
  for (int i = 0; i < n; ++i) g.targets.push_back(i);
  Rewriter rw = make_rewriter(n, Helpers{}, McxStrategy::borrow_many);
  rw.gate(g);
  Circuit c{layout, std::move(rw.out)};
  validate_circuit(c);
  return c;
}

Circuit lower_increment(int m) {
  if (m < 1) throw LoweringError("counter register must be non-empty");
  RegisterLayout layout = RegisterLayout::raw(2 * m);
  Gate g;
  g.kind = GateKind::INC;
  for (int i = 0; i < m; ++i) g.targets.push_back(i);
  Rewriter rw = make_rewriter(2 * m, Helpers{}, McxStrategy::borrow_many);
  rw.gate(g);
  Circuit c{layout, std::move(rw.out)};
  validate_circuit(c);
  return c;
}

Circuit lower_ucry(const Gate& g, const RegisterLayout& layout) {
  if (g.kind != GateKind::UCRY) {
    throw LoweringError("lower_ucry expects a uniformly controlled rotation");
  }
  validate_gate(g, layout.width());
  Rewriter rw = make_rewriter(layout.width(), Helpers{}, McxStrategy::borrow_many);
  rw.gate(g);
  Circuit c{layout, std::move(rw.out)};
  validate_circuit(c);
  return c;
}

Circuit lower_circuit(const Circuit& c, const LoweringConfig& config) {
  validate_circuit(c);
  bool need_flag = false;
  bool need_kick = false;
  bool need_carry = false;
  int need_load = 0;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::ADD:
      case GateKind::SUB:
        need_carry = true;
        if (g.controls.size() >= 2) need_kick = true;
        break;
      case GateKind::CONST_ADD: {
        const int n = static_cast<int>(g.targets.size());
        const std::uint64_t span = std::uint64_t{1} << n;
        const std::uint64_t cc = g.constant % span;
        if (cc == 0) break;
        need_carry = true;
        need_load = std::max(need_load, bit_width(std::min(cc, span - cc)));
        if (g.controls.size() >= 2) need_kick = true;
        break;
      }
      case GateKind::REFLECT:
        need_kick = true;
        break;
      case GateKind::PREP_MACRO:
      case GateKind::UNPREP_MACRO:
        need_flag = true;
        need_kick = true;
        break;
      default:
        break;
    }
  }

  RegisterLayout grown = c.layout;
  Helpers h;
  int next = grown.width();
  if (need_flag) h.flag = next++;
  if (need_kick) h.kick = next++;
  if (need_carry) h.carry = next++;
  for (int i = 0; i < need_load; ++i) h.load.push_back(next++);
  grown.scratch += next - grown.width();

  Rewriter rw = make_rewriter(grown.width(), h, config.mcx);
  for (const Gate& g : c.gates) rw.gate(g);
  Circuit lowered{grown, std::move(rw.out)};
  validate_circuit(lowered);
  return lowered;
}

GateCostReport tally(const Circuit& c) {
  GateCostReport r;
  std::unordered_set<int> borrowed;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::NOT:
        ++r.not_count;
        break;
      case GateKind::CNOT:
        ++r.cnot_count;
        break;
      case GateKind::TOFFOLI:
        ++r.toffoli_count;
        break;
      case GateKind::H:
        ++r.h_count;
        break;
      case GateKind::RY:
        ++r.ry_count;
        break;
      case GateKind::SWAP:
        ++r.swap_count;
        break;
      case GateKind::CZ:
        ++r.cz_count;
        break;
      case GateKind::Z:
        ++r.z_count;
        break;
      default:
        throw LoweringError(std::string("cannot tally macro gate ") +
                            kind_name(g.kind));
    }
    for (int w : g.borrowed) borrowed.insert(w);
  }
  r.ancilla_count = c.layout.width() - c.layout.sys;
  r.borrowed_count = static_cast<long long>(borrowed.size());
  r.total_elementary = r.not_count + r.cnot_count + r.toffoli_count +
                       r.h_count + r.ry_count + r.swap_count + r.cz_count +
                       r.z_count;
  return r;
}

GateCostReport count_gates(const Circuit& c, const LoweringConfig& config) {
  return tally(lower_circuit(c, config));
}

}  // namespace qwt
