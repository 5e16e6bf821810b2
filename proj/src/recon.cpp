// Copyright 2026 The nrhdr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nrhdr/recon.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "nrhdr/fft.hpp"

namespace nrhdr {

namespace {

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

int next_pow2(int v) {
    int p = 1;
    while (p < v) p <<= 1;
    return p;
}

}  // namespace

void ReconstructionConfig::validate() const {
    if (model_block < 2 || model_block % 2 != 0) {
        throw std::invalid_argument("model_block must be even and >= 2");
    }
    if (border < 0) throw std::invalid_argument("border must be >= 0");
    if (max_iterations < 1) {
        throw std::invalid_argument("max_iterations must be >= 1");
    }
    if (!(gamma > 0.0) || !(gamma <= 1.0)) {
        throw std::invalid_argument("gamma must be in (0, 1]");
    }
    if (!(rho > 0.0) || !(rho < 1.0)) {
        throw std::invalid_argument("rho must be in (0, 1)");
    }
    if (!(min_residual_gain >= 0.0)) {
        throw std::invalid_argument("min_residual_gain must be >= 0");
    }
    if (!(fallback_weight >= 0.0) || !(fallback_weight <= 1.0)) {
        throw std::invalid_argument("fallback_weight must be in [0, 1]");
    }
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

int ReconstructionConfig::effective_fft_size() const {
    const int needed = model_block + 2 * border;
    if (fft_size >= needed && is_pow2(fft_size)) return fft_size;
    return next_pow2(needed);
}

std::vector<double> BlockModel::synthesize() const {
    const int T = fft_size;
    std::vector<double> g(std::size_t(T) * T, 0.0);
    const double step = 2.0 * std::numbers::pi / T;
    for (const Term& t : terms) {
        for (int m = 0; m < T; ++m) {
            for (int n = 0; n < T; ++n) {
                const double phase = step * (t.ku * m + t.kv * n);
                const std::complex<double> phi(std::cos(phase), std::sin(phase));
                const std::complex<double> contrib = t.coeff * phi;
                g[std::size_t(m) * T + n] +=
                    t.self_conjugate ? contrib.real() : 2.0 * contrib.real();
            }
        }
    }
    return g;
}

namespace {

using cd = std::complex<double>;

// One greedy candidate: a conjugate pair of DFT frequencies (or a
// self-conjugate one), identified by the representative (ku, kv).
struct Candidate {
    int ku, kv;
    bool self_conjugate;
};

struct CandidateTable {
    int fft_size;
    std::vector<Candidate> entries;  // scanned in tie-break order
    // squared low-pass selection preference, 1 at DC falling to 0 at the
    // Nyquist corner (standard FSE practice)
    std::vector<double> freq_weight2;
};

const CandidateTable& candidate_table(int T) {
    static std::mutex mu;
    static std::map<int, CandidateTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(T);
    if (it != cache.end()) return it->second;

    struct Key {
        int mag2, fu, fv, ku, kv;
        bool selfc;
    };
    std::vector<Key> keys;
    keys.reserve(std::size_t(T) * T);
    auto centered = [T](int k) { return k <= T / 2 ? k : k - T; };
    for (int ku = 0; ku < T; ++ku) {
        for (int kv = 0; kv < T; ++kv) {
            const int cku = (T - ku) % T;
            const int ckv = (T - kv) % T;
            const bool selfc = (cku == ku && ckv == kv);
            const int fu = centered(ku), fv = centered(kv);
            const int cfu = centered(cku), cfv = centered(ckv);
            // one representative per conjugate pair
            if (!selfc && std::pair(cfu, cfv) < std::pair(fu, fv)) continue;
            keys.push_back({fu * fu + fv * fv, fu, fv, ku, kv, selfc});
        }
    }
    // lowest frequency first, then lexicographic, for deterministic ties
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
        return std::tuple(a.mag2, a.fu, a.fv) < std::tuple(b.mag2, b.fu, b.fv);
    });
    CandidateTable table;
    table.fft_size = T;
    table.entries.reserve(keys.size());
    table.freq_weight2.reserve(keys.size());
    for (const Key& k : keys) {
        table.entries.push_back({k.ku, k.kv, k.selfc});
        const double fdist = std::sqrt(double(k.fu) * k.fu + double(k.fv) * k.fv);
        const double fw = 1.0 - fdist * std::numbers::sqrt2 / T;
        table.freq_weight2.push_back(fw * fw);
    }
    return cache.emplace(T, std::move(table)).first->second;
}

// Constraints of one block's support window, in frame coordinates (CSR over
// member cells).
struct WindowSystem {
    std::vector<double> weight;
    std::vector<double> rhs;
    std::vector<int> cell_begin;  // size nc+1
    std::vector<int> cell_fx;
    std::vector<int> cell_fy;
};

struct Workspace {
    std::vector<cd> q, spec, acc, frame;
    std::vector<double> d_k, a11, a22, a12;
    std::vector<double> residual;
    std::vector<cd> twiddle;

    explicit Workspace(int T)
        : q(std::size_t(T) * T, 0.0),
          spec(std::size_t(T) * T),
          acc(std::size_t(T) * T),
          frame(std::size_t(T) * T),
          twiddle(T) {
        const double step = 2.0 * std::numbers::pi / T;
        for (int t = 0; t < T; ++t) {
            twiddle[t] = cd(std::cos(step * t), std::sin(step * t));
        }
    }
};

// Greedy pursuit on one support window. Picks, per iteration, the conjugate
// frequency pair whose gamma-damped weighted least-squares step yields the
// largest weighted residual energy decrease, where each basis function is
// pushed through the same point/binned degradation as the measurements.
BlockModel solve_window(const WindowSystem& sys, int T,
                        const ReconstructionConfig& cfg, const Fft2d& fft,
                        Workspace& ws) {
    const CandidateTable& cand = candidate_table(T);
    const int nc = int(sys.rhs.size());
    const std::size_t frame_n = std::size_t(T) * T;
    const int mask = T - 1;

    BlockModel model;
    model.fft_size = T;

    // Iteration-independent quadratics: for each frequency k,
    //   D_k  = sum_i w_i |psi_k,i|^2   (offset autocorrelation transform)
    //   P_k  = sum_i w_i  psi_k,i^2    (position-sum transform)
    // with psi_k,i the degraded basis, i.e. phi_k summed over member cells.
    std::fill(ws.q.begin(), ws.q.end(), cd(0.0));
    std::fill(ws.acc.begin(), ws.acc.end(), cd(0.0));
    for (int i = 0; i < nc; ++i) {
        const double w = sys.weight[i];
        for (int a = sys.cell_begin[i]; a < sys.cell_begin[i + 1]; ++a) {
            for (int b = sys.cell_begin[i]; b < sys.cell_begin[i + 1]; ++b) {
                const int dy = (sys.cell_fy[a] - sys.cell_fy[b] + T) & mask;
                const int dx = (sys.cell_fx[a] - sys.cell_fx[b] + T) & mask;
                ws.q[std::size_t(dy) * T + dx] += w;
                const int py = (sys.cell_fy[a] + sys.cell_fy[b]) & mask;
                const int px = (sys.cell_fx[a] + sys.cell_fx[b]) & mask;
                ws.acc[std::size_t(py) * T + px] += w;
            }
        }
    }
    fft.forward(ws.q.data(), ws.spec.data());
    const std::size_t ncand = cand.entries.size();
    ws.d_k.resize(ncand);
    ws.a11.resize(ncand);
    ws.a22.resize(ncand);
    ws.a12.resize(ncand);
    for (std::size_t j = 0; j < ncand; ++j) {
        const auto& e = cand.entries[j];
        ws.d_k[j] = ws.spec[std::size_t(e.ku) * T + e.kv].real();
    }
    fft.forward(ws.acc.data(), ws.spec.data());
    for (std::size_t j = 0; j < ncand; ++j) {
        const auto& e = cand.entries[j];
        const cd p = std::conj(ws.spec[std::size_t(e.ku) * T + e.kv]);
        const double d = ws.d_k[j];
        ws.a11[j] = 2.0 * (d + p.real());   // 4 * sum w alpha^2
        ws.a22[j] = 2.0 * (d - p.real());   // 4 * sum w beta^2
        ws.a12[j] = -2.0 * p.imag();        // -4 * sum w alpha beta
    }
    std::fill(ws.q.begin(), ws.q.end(), cd(0.0));

    ws.residual.assign(sys.rhs.begin(), sys.rhs.end());
    double energy = 0.0;
    for (int i = 0; i < nc; ++i) {
        energy += sys.weight[i] * ws.residual[i] * ws.residual[i];
    }
    const double initial_energy = energy;
    model.residual_trace.push_back(energy);

    std::vector<int> term_index(frame_n, -1);
    const double eps = 1e-12;
    const double energy_floor = 1e-28 * std::max(initial_energy, 1.0);

    for (int iter = 0; iter < cfg.max_iterations && energy > energy_floor;
         ++iter) {
        // correlations C_k = sum_i w_i r_i conj(psi_k,i), all k at once
        for (int i = 0; i < nc; ++i) {
            const double wr = sys.weight[i] * ws.residual[i];
            for (int a = sys.cell_begin[i]; a < sys.cell_begin[i + 1]; ++a) {
                ws.q[std::size_t(sys.cell_fy[a]) * T + sys.cell_fx[a]] += wr;
            }
        }
        fft.forward(ws.q.data(), ws.spec.data());
        for (int a = 0; a < sys.cell_begin[nc]; ++a) {
            ws.q[std::size_t(sys.cell_fy[a]) * T + sys.cell_fx[a]] = 0.0;
        }

        // selection: energy decrease scaled by the low-pass preference;
        // the applied coefficient stays the unscaled least-squares step
        double best_key = 0.0;
        std::size_t best_j = ncand;
        double best_re = 0.0, best_im = 0.0;
        for (std::size_t j = 0; j < ncand; ++j) {
            const auto& e = cand.entries[j];
            const cd ck = ws.spec[std::size_t(e.ku) * T + e.kv];
            double gain, xre, xim;
            if (e.self_conjugate) {
                const double d = ws.d_k[j];
                if (d <= eps) continue;
                xre = ck.real() / d;
                xim = 0.0;
                gain = ck.real() * xre;
            } else {
                const double a11 = ws.a11[j], a22 = ws.a22[j], a12 = ws.a12[j];
                const double b1 = 2.0 * ck.real(), b2 = 2.0 * ck.imag();
                const double tr = a11 + a22;
                if (tr <= eps) continue;
                const double det = a11 * a22 - a12 * a12;
                if (det > 1e-12 * tr * tr) {
                    xre = (a22 * b1 - a12 * b2) / det;
                    xim = (a11 * b2 - a12 * b1) / det;
                } else if (a11 >= a22 && a11 > eps) {
                    xre = b1 / a11;
                    xim = 0.0;
                } else if (a22 > eps) {
                    xre = 0.0;
                    xim = b2 / a22;
                } else {
                    continue;
                }
                gain = b1 * xre + b2 * xim;
            }
            const double key = gain * cand.freq_weight2[j];
            if (key > best_key) {
                best_key = key;
                best_j = j;
                best_re = xre;
                best_im = xim;
            }
        }
        if (best_j == ncand) break;  // no candidate reduces the residual

        const auto& e = cand.entries[best_j];
        const cd coeff = cfg.gamma * cd(best_re, best_im);
        const std::size_t kidx = std::size_t(e.ku) * T + e.kv;
        if (term_index[kidx] < 0) {
            term_index[kidx] = int(model.terms.size());
            model.terms.push_back({e.ku, e.kv, coeff, e.self_conjugate});
        } else {
            model.terms[term_index[kidx]].coeff += coeff;
        }

        for (int i = 0; i < nc; ++i) {
            cd psi(0.0);
            for (int a = sys.cell_begin[i]; a < sys.cell_begin[i + 1]; ++a) {
                psi += ws.twiddle[(e.ku * sys.cell_fy[a] + e.kv * sys.cell_fx[a]) &
                                  mask];
            }
            const double step = (coeff * psi).real();
            ws.residual[i] -= e.self_conjugate ? step : 2.0 * step;
        }
        double next_energy = 0.0;
        for (int i = 0; i < nc; ++i) {
            next_energy += sys.weight[i] * ws.residual[i] * ws.residual[i];
        }
        model.residual_trace.push_back(next_energy);
        const bool stalled =
            energy > 0.0 && (energy - next_energy) < cfg.min_residual_gain * energy;
        energy = next_energy;
        if (stalled) break;
    }
    return model;
}

// Synthesize the model onto the T x T frame and check it came out real.
void render_model(const BlockModel& model, const Fft2d& fft, Workspace& ws) {
    const int T = model.fft_size;
    std::fill(ws.acc.begin(), ws.acc.end(), cd(0.0));
    for (const auto& t : model.terms) {
        ws.acc[std::size_t(t.ku) * T + t.kv] += t.coeff;
        if (!t.self_conjugate) {
            const int cku = (T - t.ku) % T;
            const int ckv = (T - t.kv) % T;
            ws.acc[std::size_t(cku) * T + ckv] += std::conj(t.coeff);
        }
    }
    fft.backward(ws.acc.data(), ws.frame.data());
    double max_re = 0.0, max_im = 0.0;
    for (const cd& v : ws.frame) {
        max_re = std::max(max_re, std::abs(v.real()));
        max_im = std::max(max_im, std::abs(v.imag()));
    }
    if (max_im > 1e-9 * std::max(max_re, 1e-12)) {
        throw std::logic_error("synthesized block model is not real");
    }
}

struct BlockJob {
    int bx0, by0;      // model block origin, image coords
    int wx0, wy0;      // window origin, image coords
    int win_w, win_h;  // window size
    int ox, oy;        // window offset inside the frame
};

}  // namespace

HdrImage reconstruct(const SampledFrame& frame, const ReconstructionConfig& cfg,
                     std::vector<BlockModel>* models_out) {
    cfg.validate();
    frame.layout.validate();
    const SensorLayout& layout = frame.layout;
    const int W = layout.width();
    const int H = layout.height();
    const int B = cfg.model_block;
    if (W % B != 0 || H % B != 0) {
        throw std::invalid_argument("image dimensions must be divisible by the model block");
    }
    const int T = cfg.effective_fft_size();
    const int border = cfg.border;
    const Fft2d fft(T, T);
    candidate_table(T);  // build once before workers start

    // constraints grouped by sensor block (at most two per block)
    const std::vector<GridConstraint> constraints = expand_to_grid(frame);
    std::vector<int> block_begin(layout.block_count() + 1, 0);
    for (const auto& c : constraints) block_begin[c.block + 1]++;
    for (int b = 0; b < layout.block_count(); ++b) {
        block_begin[b + 1] += block_begin[b];
    }
    // expand_to_grid emits in block order already
    for (std::size_t i = 1; i < constraints.size(); ++i) {
        if (constraints[i].block < constraints[i - 1].block) {
            throw std::logic_error("constraints not in block order");
        }
    }

    // rho^sqrt(d2) lookup over integer squared distances
    std::vector<double> rho_pow(std::size_t(2) * T * T + 1);
    for (std::size_t d2 = 0; d2 < rho_pow.size(); ++d2) {
        rho_pow[d2] = std::pow(cfg.rho, std::sqrt(double(d2)));
    }

    const int nbx = W / B;
    const int nby = H / B;
    const int n_blocks = nbx * nby;
    HdrImage out(W, H, 0.0);
    if (models_out) {
        models_out->assign(n_blocks, BlockModel{});
    }

    const bool sequential = cfg.use_reconstructed_context;
    std::vector<char> block_done;
    if (sequential) block_done.assign(n_blocks, 0);

    auto make_job = [&](int block_id) {
        BlockJob job;
        job.bx0 = (block_id % nbx) * B;
        job.by0 = (block_id / nbx) * B;
        job.wx0 = std::max(0, job.bx0 - border);
        job.wy0 = std::max(0, job.by0 - border);
        const int wx1 = std::min(W, job.bx0 + B + border);
        const int wy1 = std::min(H, job.by0 + B + border);
        job.win_w = wx1 - job.wx0;
        job.win_h = wy1 - job.wy0;
        job.ox = (T - job.win_w) / 2;
        job.oy = (T - job.win_h) / 2;
        return job;
    };

    auto block_distance_weight = [&](const BlockJob& job, int x, int y) {
        const int dx = std::max({0, job.bx0 - x, x - (job.bx0 + B - 1)});
        const int dy = std::max({0, job.by0 - y, y - (job.by0 + B - 1)});
        return rho_pow[std::size_t(dx) * dx + std::size_t(dy) * dy];
    };

    auto gather_system = [&](const BlockJob& job) {
        WindowSystem sys;
        sys.cell_begin.push_back(0);
        const int sbx0 = (job.wx0 + 1) / 2;
        const int sby0 = (job.wy0 + 1) / 2;
        const int wx1 = job.wx0 + job.win_w;
        const int wy1 = job.wy0 + job.win_h;
        auto push_constraint = [&](std::span<const std::array<int, 2>> cells,
                                   double value, double weight_mult) {
            double wsum = 0.0;
            for (const auto& cell : cells) {
                wsum += block_distance_weight(job, cell[0], cell[1]);
                sys.cell_fx.push_back(cell[0] - job.wx0 + job.ox);
                sys.cell_fy.push_back(cell[1] - job.wy0 + job.oy);
            }
            sys.cell_begin.push_back(int(sys.cell_fx.size()));
            sys.rhs.push_back(value);
            sys.weight.push_back(weight_mult * wsum / double(cells.size()));
        };
        for (int sby = sby0; 2 * sby + 2 <= wy1; ++sby) {
            for (int sbx = sbx0; 2 * sbx + 2 <= wx1; ++sbx) {
                const int b = layout.block_index(sbx, sby);
                if (sequential) {
                    const int mb = (sby * 2 / B) * nbx + (sbx * 2 / B);
                    if (block_done[mb]) {
                        // this region is already synthesized; its pixels stand
                        // in for the original readings, mildly down-weighted
                        for (int dy = 0; dy < 2; ++dy) {
                            for (int dx = 0; dx < 2; ++dx) {
                                const std::array<int, 2> cell{2 * sbx + dx,
                                                              2 * sby + dy};
                                push_constraint(std::span(&cell, 1),
                                                out(cell[0], cell[1]), 0.5);
                            }
                        }
                        continue;
                    }
                }
                for (int ci = block_begin[b]; ci < block_begin[b + 1]; ++ci) {
                    const GridConstraint& c = constraints[ci];
                    push_constraint(
                        std::span(c.cells.data(), std::size_t(c.cell_count)),
                        c.value, c.fallback ? cfg.fallback_weight : 1.0);
                }
            }
        }
        return sys;
    };

    auto process_block = [&](int block_id, Workspace& ws) {
        const BlockJob job = make_job(block_id);
        const WindowSystem sys = gather_system(job);
        BlockModel model = solve_window(sys, T, cfg, fft, ws);
        render_model(model, fft, ws);
        const int rx = job.bx0 - job.wx0 + job.ox;
        const int ry = job.by0 - job.wy0 + job.oy;
        for (int y = 0; y < B; ++y) {
            for (int x = 0; x < B; ++x) {
                const double v =
                    ws.frame[std::size_t(ry + y) * T + (rx + x)].real();
                out(job.bx0 + x, job.by0 + y) = std::max(v, 0.0);
            }
        }
        if (models_out) (*models_out)[block_id] = std::move(model);
        if (sequential) block_done[block_id] = 1;
    };

    int n_threads = cfg.threads == 0
                        ? int(std::thread::hardware_concurrency())
                        : cfg.threads;
    n_threads = std::clamp(n_threads, 1, n_blocks);

    if (sequential || n_threads == 1) {
        Workspace ws(T);
        for (int block_id = 0; block_id < n_blocks; ++block_id) {
            process_block(block_id, ws);
        }
    } else {
        std::atomic<int> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            Workspace ws(T);
            for (;;) {
                const int block_id = next.fetch_add(1);
                if (block_id >= n_blocks) break;
                try {
                    process_block(block_id, ws);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    break;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    return out;
}

}  // namespace nrhdr
