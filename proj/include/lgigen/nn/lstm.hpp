//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_NN_LSTM_HPP_
#define LGIGEN_NN_LSTM_HPP_

#include <Eigen/Core>

namespace lgigen::nn {

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

/// One LSTM layer. Gate blocks are stacked as input, forget, cell, output
/// along the rows of wx [4H x I], wh [4H x H] and b [4H].
template <typename T>
struct LstmParams {
  Mat<T> wx, wh;
  Vec<T> b;

  LstmParams() = default;

  LstmParams(int input, int hidden)
      : wx(Mat<T>::Zero(4 * hidden, input)),
        wh(Mat<T>::Zero(4 * hidden, hidden)),
        b(Vec<T>::Zero(4 * hidden)) { }

  int input_size() const { return static_cast<int>(wx.cols()); }

  int hidden_size() const { return static_cast<int>(wh.cols()); }
};

/// Activations of one layer over a (steps x batch) sequence block. Column
/// t * batch + j holds step t of sequence j.
template <typename T>
struct LstmTrace {
  Mat<T> gates;  // post-activation i, f, g, o
  Mat<T> c, tanh_c, h;
};

namespace internal {
template <typename Derived>
auto sigmoid(const Eigen::ArrayBase<Derived> &x) {
  using S = typename Derived::Scalar;
  return (x * S(0.5)).tanh() * S(0.5) + S(0.5);
}
}  // namespace internal

/// Runs the recurrence given the input contribution `xproj` = Wx x + b for
/// every column. Initial hidden and cell states are zero.
template <typename T>
void lstm_forward(const LstmParams<T> &p, const Mat<T> &xproj, int steps,
                  int batch, LstmTrace<T> &tr) {
  const int H = p.hidden_size();
  const Eigen::Index cols = static_cast<Eigen::Index>(steps) * batch;
  tr.gates.resize(4 * H, cols);
  tr.c.resize(H, cols);
  tr.tanh_c.resize(H, cols);
  tr.h.resize(H, cols);

  Mat<T> a(4 * H, batch);
  for (int t = 0; t < steps; ++t) {
    const Eigen::Index c0 = static_cast<Eigen::Index>(t) * batch;
    a = xproj.middleCols(c0, batch);
    if (t > 0)
      a.noalias() += p.wh * tr.h.middleCols(c0 - batch, batch);

    auto g = tr.gates.middleCols(c0, batch);
    g.topRows(2 * H) = internal::sigmoid(a.topRows(2 * H).array()).matrix();
    g.middleRows(2 * H, H) = a.middleRows(2 * H, H).array().tanh().matrix();
    g.bottomRows(H) = internal::sigmoid(a.bottomRows(H).array()).matrix();

    auto c = tr.c.middleCols(c0, batch);
    c = (g.topRows(H).array() * g.middleRows(2 * H, H).array()).matrix();
    if (t > 0) {
      c.array() +=
          g.middleRows(H, H).array() * tr.c.middleCols(c0 - batch, batch).array();
    }
    tr.tanh_c.middleCols(c0, batch) = c.array().tanh().matrix();
    tr.h.middleCols(c0, batch) =
        (g.bottomRows(H).array() * tr.tanh_c.middleCols(c0, batch).array())
            .matrix();
  }
}

/// Backpropagation through time. `dh` holds the loss gradient reaching each
/// hidden output from above. Fills `da` with gradients of the gate
/// pre-activations and accumulates the recurrent weight gradient into
/// `dwh`; input weights and biases are left to the caller, who knows the
/// input.
template <typename T>
void lstm_backward(const LstmParams<T> &p, const LstmTrace<T> &tr,
                   const Mat<T> &dh, int steps, int batch, Mat<T> &da,
                   Mat<T> &dwh) {
  const int H = p.hidden_size();
  const Eigen::Index cols = static_cast<Eigen::Index>(steps) * batch;
  da.resize(4 * H, cols);

  Mat<T> dh_t(H, batch), dc(H, batch), dc_next = Mat<T>::Zero(H, batch);
  Mat<T> dh_next = Mat<T>::Zero(H, batch);
  for (int t = steps - 1; t >= 0; --t) {
    const Eigen::Index c0 = static_cast<Eigen::Index>(t) * batch;
    const auto g = tr.gates.middleCols(c0, batch).array();
    const auto i = g.topRows(H), f = g.middleRows(H, H),
               gg = g.middleRows(2 * H, H), o = g.bottomRows(H);
    const auto tc = tr.tanh_c.middleCols(c0, batch).array();

    dh_t = dh.middleCols(c0, batch) + dh_next;
    dc = (dh_t.array() * o * (T(1) - tc.square()) + dc_next.array()).matrix();

    auto d = da.middleCols(c0, batch).array();
    d.topRows(H) = dc.array() * gg * i * (T(1) - i);
    if (t > 0) {
      d.middleRows(H, H) = dc.array() * tr.c.middleCols(c0 - batch, batch).array()
                           * f * (T(1) - f);
    } else {
      d.middleRows(H, H).setZero();
    }
    d.middleRows(2 * H, H) = dc.array() * i * (T(1) - gg.square());
    d.bottomRows(H) = dh_t.array() * tc * o * (T(1) - o);

    dc_next = (dc.array() * f).matrix();
    if (t > 0)
      dh_next.noalias() = p.wh.transpose() * da.middleCols(c0, batch);
  }
  if (steps > 1) {
    const Eigen::Index rest = cols - batch;
    dwh.noalias() +=
        da.rightCols(rest) * tr.h.leftCols(rest).transpose();
  }
}

}  // namespace lgigen::nn

#endif  // LGIGEN_NN_LSTM_HPP_
