// Cocharacter matrices for the maps between G_m, SL_n, GL_n and PGL_n,
// written in the coordinates the presets use.
#pragma once

#include "flasque.hpp"

namespace fixtures {

using namespace flasque;

// SL_n -> GL_n sends each simple coroot to e_i - e_{i+1}.
inline IntMatrix sl_to_gl(long n) {
  RootDatum sl = *preset_sl(n).root_datum;
  RootDatum gl = *preset_gl(n).root_datum;
  return gl.coroots * unimodular_inverse(sl.coroots);
}

// det: GL_n -> G_m, e_i -> 1.
inline IntMatrix gl_to_gm(long n) {
  IntMatrix f(1, n);
  for (long i = 0; i < n; ++i) f(0, i) = 1;
  return f;
}

// Centre: G_m -> GL_n, t -> diag(t, ..., t).
inline IntMatrix gm_to_gl(long n) { return transpose(gl_to_gm(n)); }

// GL_n -> PGL_n. The image of e_i in Y(PGL_n) = Z^n / Z(1,...,1) is
// e_i - (1/n) sum e_j = sum_k c_k alpha_k^vee with c_k = [k >= i] - k/n; a
// simple coroot has PGL coordinates given by the matching coroot column.
inline IntMatrix gl_to_pgl(long n) {
  RootDatum pgl = *preset_pgl(n).root_datum;
  const size_t r = n - 1;
  IntMatrix nc(r, n);
  for (long i = 1; i <= n; ++i)
    for (long k = 1; k <= static_cast<long>(r); ++k) nc(k - 1, i - 1) = (k >= i ? n : 0) - k;
  IntMatrix scaled = pgl.coroots * nc;
  IntMatrix f(r, n);
  for (size_t a = 0; a < r; ++a)
    for (long b = 0; b < n; ++b) {
      if (!(scaled(a, b) % Integer(n)).is_zero()) throw std::logic_error("gl_to_pgl: non-integral image");
      f(a, b) = scaled(a, b) / Integer(n);
    }
  return f;
}

}  // namespace fixtures
