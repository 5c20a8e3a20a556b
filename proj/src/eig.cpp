/*
   Copyright 2026 The tclsim Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Dense real nonsymmetric eigensolver in the classic EISPACK hqr2 lineage
// (Peters & Wilkinson; see also Golub & Van Loan ch. 7). The matrices this
// project feeds in are small (order of a few hundred), so there is no
// blocking and no attempt at multishift sweeps.

#include "tcl/eig.hpp"

#include <cmath>
#include <sstream>

namespace tcl {

namespace {

constexpr double kDeflationScale = 1e-14;  // deflate when |h(l,l-1)| <= 1e-14*norm

// Parlett-Reinsch scaling with radix 2; returns per-row scale factors.
// The permutation phase of the EISPACK routine is omitted: the transition
// matrices handled here are irreducible, so isolation never triggers.
Vector balance_in_place(Matrix& a) {
    const int n = a.rows();
    Vector scale(n, 1.0);
    const double radix = 2.0;
    const double sqrdx = radix * radix;
    bool again = true;
    while (again) {
        again = false;
        for (int i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c >= g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                again = true;
                const double ginv = 1.0 / f;
                scale[i] *= f;
                for (int j = 0; j < n; ++j) a(i, j) *= ginv;
                for (int j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
    return scale;
}

// Householder reduction to upper Hessenberg form, accumulating the
// orthogonal transformation into q (a_in = q * h * q^T on exit).
void hessenberg_in_place(Matrix& a, Matrix& q) {
    const int n = a.rows();
    q = Matrix::identity(n);
    Vector v(n, 0.0);
    for (int k = 0; k + 2 < n; ++k) {
        double colscale = 0.0;
        for (int i = k + 1; i < n; ++i) colscale += std::abs(a(i, k));
        if (colscale == 0.0) continue;

        double s2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / colscale;
            s2 += v[i] * v[i];
        }
        double alpha = std::sqrt(s2);
        if (v[k + 1] > 0.0) alpha = -alpha;
        v[k + 1] -= alpha;

        double vtv = 0.0;
        for (int i = k + 1; i < n; ++i) vtv += v[i] * v[i];
        if (vtv == 0.0) continue;
        const double beta = 2.0 / vtv;

        // rows: a <- (I - beta v v^T) a
        for (int j = k; j < n; ++j) {
            double s = 0.0;
            for (int i = k + 1; i < n; ++i) s += v[i] * a(i, j);
            s *= beta;
            for (int i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
        }
        // columns: a <- a (I - beta v v^T)
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s *= beta;
            for (int j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
        }
        // accumulate: q <- q (I - beta v v^T)
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = k + 1; j < n; ++j) s += q(i, j) * v[j];
            s *= beta;
            for (int j = k + 1; j < n; ++j) q(i, j) -= s * v[j];
        }

        a(k + 1, k) = alpha * colscale;
        for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

// Francis double-shift QR on the Hessenberg matrix h, accumulating the
// transformations into z. On exit h is quasi-triangular (real Schur form)
// and wr/wi hold the eigenvalues, conjugate pairs adjacent with the
// positive-imaginary member first.
void francis_schur(Matrix& h, Matrix& z, Vector& wr, Vector& wi, double norm) {
    const int n = h.rows();
    const double defl_tol = kDeflationScale * norm;
    int iterations_left = 30 * std::max(n, 1);

    int en = n - 1;
    double t_shift = 0.0;
    double p = 0, q = 0, r = 0, s = 0, w = 0, x = 0, y = 0, zz = 0;

    while (en >= 0) {
        int iter = 0;
        const int na = en - 1;
        const int enm2 = na - 1;
        bool two_roots = false;
        int l = 0;

        for (;;) {
            for (l = en; l > 0; --l) {
                if (std::abs(h(l, l - 1)) <= defl_tol) {
                    h(l, l - 1) = 0.0;
                    break;
                }
            }
            x = h(en, en);
            if (l == en) break;  // one root deflated
            y = h(na, na);
            w = h(en, na) * h(na, en);
            if (l == na) {
                two_roots = true;
                break;
            }
            if (iterations_left == 0) {
                std::ostringstream msg;
                msg << "qr iteration failed to converge on a " << (en - l + 1) << "x"
                    << (en - l + 1) << " submatrix";
                throw QrConvergenceError(msg.str(), en - l + 1);
            }
            if (iter == 10 || iter == 20) {
                // exceptional shift
                t_shift += x;
                for (int i = 0; i <= en; ++i) h(i, i) -= x;
                s = std::abs(h(en, na)) + std::abs(h(na, enm2));
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            ++iter;
            --iterations_left;

            // look for two consecutive small subdiagonal elements
            int m;
            for (m = enm2; m >= l; --m) {
                zz = h(m, m);
                r = x - zz;
                s = y - zz;
                p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
                q = h(m + 1, m + 1) - zz - r - s;
                r = h(m + 2, m + 1);
                s = std::abs(p) + std::abs(q) + std::abs(r);
                p /= s;
                q /= s;
                r /= s;
                if (m == l) break;
                const double tst1 =
                    std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(zz) + std::abs(h(m + 1, m + 1)));
                const double tst2 = tst1 + std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
                if (tst2 == tst1) break;
            }
            for (int i = m + 2; i <= en; ++i) {
                h(i, i - 2) = 0.0;
                if (i != m + 2) h(i, i - 3) = 0.0;
            }

            // double QR sweep on rows l..en and columns m..en
            for (int k = m; k <= na; ++k) {
                const bool notlast = (k != na);
                if (k != m) {
                    p = h(k, k - 1);
                    q = h(k + 1, k - 1);
                    r = notlast ? h(k + 2, k - 1) : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x == 0.0) continue;
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = std::sqrt(p * p + q * q + r * r);
                if (p < 0.0) s = -s;
                if (k != m)
                    h(k, k - 1) = -s * x;
                else if (l != m)
                    h(k, k - 1) = -h(k, k - 1);
                p += s;
                x = p / s;
                y = q / s;
                zz = r / s;
                q /= p;
                r /= p;

                if (!notlast) {
                    for (int j = k; j < n; ++j) {
                        p = h(k, j) + q * h(k + 1, j);
                        h(k, j) -= p * x;
                        h(k + 1, j) -= p * y;
                    }
                    const int stop = std::min(k + 3, en);
                    for (int i = 0; i <= stop; ++i) {
                        p = x * h(i, k) + y * h(i, k + 1);
                        h(i, k) -= p;
                        h(i, k + 1) -= p * q;
                    }
                    for (int i = 0; i < n; ++i) {
                        p = x * z(i, k) + y * z(i, k + 1);
                        z(i, k) -= p;
                        z(i, k + 1) -= p * q;
                    }
                } else {
                    for (int j = k; j < n; ++j) {
                        p = h(k, j) + q * h(k + 1, j) + r * h(k + 2, j);
                        h(k, j) -= p * x;
                        h(k + 1, j) -= p * y;
                        h(k + 2, j) -= p * zz;
                    }
                    const int stop = std::min(k + 3, en);
                    for (int i = 0; i <= stop; ++i) {
                        p = x * h(i, k) + y * h(i, k + 1) + zz * h(i, k + 2);
                        h(i, k) -= p;
                        h(i, k + 1) -= p * q;
                        h(i, k + 2) -= p * r;
                    }
                    for (int i = 0; i < n; ++i) {
                        p = x * z(i, k) + y * z(i, k + 1) + zz * z(i, k + 2);
                        z(i, k) -= p;
                        z(i, k + 1) -= p * q;
                        z(i, k + 2) -= p * r;
                    }
                }
            }
        }

        if (two_roots) {
            p = (y - x) / 2.0;
            q = p * p + w;
            zz = std::sqrt(std::abs(q));
            h(en, en) = x + t_shift;
            x = h(en, en);
            h(na, na) = y + t_shift;
            if (q >= 0.0) {
                // real pair: rotate the 2x2 block to upper triangular form
                zz = (p < 0.0) ? (p - zz) : (p + zz);
                wr[na] = x + zz;
                wr[en] = wr[na];
                if (zz != 0.0) wr[en] = x - w / zz;
                wi[na] = 0.0;
                wi[en] = 0.0;
                x = h(en, na);
                s = std::abs(x) + std::abs(zz);
                p = x / s;
                q = zz / s;
                r = std::sqrt(p * p + q * q);
                p /= r;
                q /= r;
                for (int j = na; j < n; ++j) {
                    zz = h(na, j);
                    h(na, j) = q * zz + p * h(en, j);
                    h(en, j) = q * h(en, j) - p * zz;
                }
                for (int i = 0; i <= en; ++i) {
                    zz = h(i, na);
                    h(i, na) = q * zz + p * h(i, en);
                    h(i, en) = q * h(i, en) - p * zz;
                }
                for (int i = 0; i < n; ++i) {
                    zz = z(i, na);
                    z(i, na) = q * zz + p * z(i, en);
                    z(i, en) = q * z(i, en) - p * zz;
                }
            } else {
                wr[na] = x + p;
                wr[en] = x + p;
                wi[na] = zz;
                wi[en] = -zz;
            }
            en = enm2;
        } else {
            h(en, en) = x + t_shift;
            wr[en] = h(en, en);
            wi[en] = 0.0;
            en = na;
        }
    }
}

// Back-substitution on the quasi-triangular factor: writes the eigenvector
// expansion coefficients into the columns of h (real vectors in their own
// column; complex pairs packed as real part in column na, imaginary part in
// column en), then multiplies by the accumulated transformation z in place.
void triangular_vectors(Matrix& h, Matrix& z, const Vector& wr, const Vector& wi, double norm) {
    const int n = h.rows();
    if (norm == 0.0) return;

    double p = 0, q = 0, r = 0, s = 0, t = 0, w = 0, x = 0, y = 0, zz = 0;

    for (int en = n - 1; en >= 0; --en) {
        p = wr[en];
        q = wi[en];
        const int na = en - 1;

        if (q < 0.0) {
            // complex pair; the last component is chosen imaginary so the
            // packed eigenvector matrix stays triangular
            int m = na;
            if (std::abs(h(en, na)) > std::abs(h(na, en))) {
                h(na, na) = q / h(en, na);
                h(na, en) = -(h(en, en) - p) / h(en, na);
            } else {
                const Complex c = Complex(0.0, -h(na, en)) / Complex(h(na, na) - p, q);
                h(na, na) = c.real();
                h(na, en) = c.imag();
            }
            h(en, na) = 0.0;
            h(en, en) = 1.0;
            for (int i = na - 1; i >= 0; --i) {
                w = h(i, i) - p;
                double ra = 0.0;
                double sa = 0.0;
                for (int j = m; j <= en; ++j) {
                    ra += h(i, j) * h(j, na);
                    sa += h(i, j) * h(j, en);
                }
                if (wi[i] < 0.0) {
                    zz = w;
                    r = ra;
                    s = sa;
                } else {
                    m = i;
                    if (wi[i] == 0.0) {
                        const Complex c = Complex(-ra, -sa) / Complex(w, q);
                        h(i, na) = c.real();
                        h(i, en) = c.imag();
                    } else {
                        // 2x2 complex system for a conjugate row pair
                        x = h(i, i + 1);
                        y = h(i + 1, i);
                        double vr = (wr[i] - p) * (wr[i] - p) + wi[i] * wi[i] - q * q;
                        double vi = (wr[i] - p) * 2.0 * q;
                        if (vr == 0.0 && vi == 0.0) {
                            const double tst1 =
                                norm * (std::abs(w) + std::abs(q) + std::abs(x) + std::abs(y) +
                                        std::abs(zz));
                            double tst2;
                            vr = tst1;
                            do {
                                vr *= 0.01;
                                tst2 = tst1 + vr;
                            } while (tst2 > tst1);
                        }
                        const Complex c = Complex(x * r - zz * ra + q * sa,
                                                  x * s - zz * sa - q * ra) /
                                          Complex(vr, vi);
                        h(i, na) = c.real();
                        h(i, en) = c.imag();
                        if (std::abs(x) > std::abs(zz) + std::abs(q)) {
                            h(i + 1, na) = (-ra - w * h(i, na) + q * h(i, en)) / x;
                            h(i + 1, en) = (-sa - w * h(i, en) - q * h(i, na)) / x;
                        } else {
                            const Complex c2 = Complex(-r - y * h(i, na), -s - y * h(i, en)) /
                                               Complex(zz, q);
                            h(i + 1, na) = c2.real();
                            h(i + 1, en) = c2.imag();
                        }
                    }

                    // overflow control
                    t = std::max(std::abs(h(i, na)), std::abs(h(i, en)));
                    if (t != 0.0) {
                        const double tst1 = t;
                        const double tst2 = tst1 + 1.0 / tst1;
                        if (tst2 <= tst1) {
                            for (int j = i; j <= en; ++j) {
                                h(j, na) /= t;
                                h(j, en) /= t;
                            }
                        }
                    }
                }
            }
        } else if (q == 0.0) {
            // real eigenvalue
            int m = en;
            h(en, en) = 1.0;
            for (int i = na; i >= 0; --i) {
                w = h(i, i) - p;
                r = 0.0;
                for (int j = m; j <= en; ++j) r += h(i, j) * h(j, en);
                if (wi[i] < 0.0) {
                    zz = w;
                    s = r;
                } else {
                    m = i;
                    if (wi[i] == 0.0) {
                        t = w;
                        if (t == 0.0) {
                            const double tst1 = norm;
                            double tst2;
                            t = tst1;
                            do {
                                t *= 0.01;
                                tst2 = norm + t;
                            } while (tst2 > tst1);
                        }
                        h(i, en) = -r / t;
                    } else {
                        // real 2x2 system for a conjugate row pair
                        x = h(i, i + 1);
                        y = h(i + 1, i);
                        q = (wr[i] - p) * (wr[i] - p) + wi[i] * wi[i];
                        t = (x * s - zz * r) / q;
                        h(i, en) = t;
                        if (std::abs(x) > std::abs(zz))
                            h(i + 1, en) = (-r - w * t) / x;
                        else
                            h(i + 1, en) = (-s - y * t) / zz;
                    }

                    // overflow control
                    t = std::abs(h(i, en));
                    if (t != 0.0) {
                        const double tst1 = t;
                        const double tst2 = tst1 + 1.0 / tst1;
                        if (tst2 <= tst1) {
                            for (int j = i; j <= en; ++j) h(j, en) /= t;
                        }
                    }
                }
            }
        }
    }

    // express the vectors in the original basis (in place; packed column j
    // only has nonzero coefficients in rows <= j)
    for (int j = n - 1; j >= 0; --j) {
        for (int i = 0; i < n; ++i) {
            double sum = 0.0;
            for (int k = 0; k <= j; ++k) sum += z(i, k) * h(k, j);
            z(i, j) = sum;
        }
    }
}

}  // namespace

EigenSystem eig_general(const Matrix& a) {
    const int n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("eig_general: matrix not square");

    EigenSystem out;
    out.values.resize(n);
    out.right_vectors.assign(n, CVector(n, Complex(0.0, 0.0)));
    if (n == 0) return out;

    Matrix h = a;
    Vector scale = balance_in_place(h);
    Matrix z;
    hessenberg_in_place(h, z);

    double norm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) norm += std::abs(h(i, j));

    Vector wr(n, 0.0), wi(n, 0.0);
    francis_schur(h, z, wr, wi, norm);
    triangular_vectors(h, z, wr, wi, norm);

    // undo balancing
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) *= scale[i];

    for (int k = 0; k < n; ++k) out.values[k] = Complex(wr[k], wi[k]);

    for (int k = 0; k < n; ++k) {
        CVector& v = out.right_vectors[k];
        if (wi[k] == 0.0) {
            for (int i = 0; i < n; ++i) v[i] = Complex(z(i, k), 0.0);
        } else if (wi[k] > 0.0) {
            for (int i = 0; i < n; ++i) v[i] = Complex(z(i, k), z(i, k + 1));
        } else {
            for (int i = 0; i < n; ++i) v[i] = Complex(z(i, k - 1), -z(i, k));
        }
        // normalize so the largest-modulus component is exactly 1
        int imax = 0;
        double vmax = 0.0;
        for (int i = 0; i < n; ++i) {
            const double m = std::abs(v[i]);
            if (m > vmax) {
                vmax = m;
                imax = i;
            }
        }
        if (vmax > 0.0) {
            const Complex pivot = v[imax];
            for (int i = 0; i < n; ++i) v[i] /= pivot;
        }
    }
    return out;
}

}  // namespace tcl
