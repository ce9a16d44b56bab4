#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ace/interval.hpp"

namespace ace {

/// Regular grid of terrain heights. Heights are stored z-down: a physically
/// higher point has a smaller (more negative) value. Elevation files carry
/// up-positive values and are negated at the read/write boundary. Cells may
/// be unknown; unknown cells poison every query that touches them.
class Dem {
public:
    Dem() = default;
    Dem(int n_rows, int n_cols, double resolution, double origin_x, double origin_y,
        double fill = 0.0, bool known = true);

    int n_rows() const { return n_rows_; }
    int n_cols() const { return n_cols_; }
    double resolution() const { return resolution_; }
    double origin_x() const { return origin_x_; }
    double origin_y() const { return origin_y_; }
    double min_x() const { return origin_x_; }
    double min_y() const { return origin_y_; }
    double max_x() const { return origin_x_ + resolution_ * n_cols_; }
    double max_y() const { return origin_y_ + resolution_ * n_rows_; }

    double at(int row, int col) const { return cells_[idx(row, col)]; }
    bool known(int row, int col) const { return known_[idx(row, col)] != 0; }
    bool all_known() const { return unknown_count_ == 0; }
    void set(int row, int col, double z) {
        cells_[idx(row, col)] = z;
        if (!known_[idx(row, col)]) {
            known_[idx(row, col)] = 1;
            --unknown_count_;
        }
    }
    void set_unknown(int row, int col) {
        if (known_[idx(row, col)]) {
            known_[idx(row, col)] = 0;
            ++unknown_count_;
        }
    }

    double cell_center_x(int col) const { return origin_x_ + (col + 0.5) * resolution_; }
    double cell_center_y(int row) const { return origin_y_ + (row + 0.5) * resolution_; }
    double inv_resolution() const { return inv_resolution_; }
    int col_of(double x) const {
        return static_cast<int>(std::floor((x - origin_x_) * inv_resolution_));
    }
    int row_of(double y) const {
        return static_cast<int>(std::floor((y - origin_y_) * inv_resolution_));
    }
    bool in_grid(int row, int col) const {
        return row >= 0 && row < n_rows_ && col >= 0 && col < n_cols_;
    }

    const double* row_data(int row) const { return cells_.data() + static_cast<std::size_t>(row) * n_cols_; }
    const std::uint8_t* row_known(int row) const { return known_.data() + static_cast<std::size_t>(row) * n_cols_; }

private:
    std::size_t idx(int row, int col) const {
        return static_cast<std::size_t>(row) * n_cols_ + col;
    }
    int n_rows_ = 0;
    int n_cols_ = 0;
    double resolution_ = 1.0;
    double inv_resolution_ = 1.0;
    double origin_x_ = 0.0;
    double origin_y_ = 0.0;
    long unknown_count_ = 0;
    std::vector<double> cells_;
    std::vector<std::uint8_t> known_;
};

/// Normalizes an angle to (-pi, pi].
double normalize_angle(double a);

struct Pose2D {
    double x = 0.0;
    double y = 0.0;
    double psi = 0.0;  // heading [rad], normalized to (-pi, pi]
};

inline Pose2D make_pose(double x, double y, double psi) {
    return Pose2D{x, y, normalize_angle(psi)};
}

/// Rectangle query region given in the body frame.
struct WheelBoxQuery {
    double center_x = 0.0;  // box center in body frame [m]
    double center_y = 0.0;
    double dim_x = 0.0;  // full extents [m]
    double dim_y = 0.0;
};

/// Rectangle in world coordinates with heading psi.
struct OrientedBox {
    double cx = 0.0;
    double cy = 0.0;
    double half_x = 0.0;
    double half_y = 0.0;
    double psi = 0.0;
};

enum class QueryStatus { Ok, Unknown, OutOfBounds };

struct BoxQueryResult {
    QueryStatus status = QueryStatus::Ok;
    Interval range;  // z-down heights; valid only when status == Ok

    bool ok() const { return status == QueryStatus::Ok; }
};

/// Min/max height over every cell whose square intersects the oriented box
/// (conservative rasterization). Unknown if any such cell is unknown;
/// OutOfBounds if the box pokes past the grid extent.
BoxQueryResult minmax_in_oriented_box(const Dem& dem, const OrientedBox& box);

/// Variant with precomputed cos/sin of box.psi for hot loops.
BoxQueryResult minmax_in_oriented_box(const Dem& dem, const OrientedBox& box,
                                      double cos_psi, double sin_psi);

/// Same query with the box given in the body frame of a pose.
BoxQueryResult minmax_in_box(const Dem& dem, const Pose2D& pose, const WheelBoxQuery& box);

struct ContactResult {
    QueryStatus status = QueryStatus::Ok;
    double z = 0.0;   // resting height, z-down (highest ground in the footprint)
    double px = 0.0;  // contact cell center, world
    double py = 0.0;
};

/// Resting height of a circular wheel footprint: the highest ground among
/// cells whose center falls in the disc. Ties resolve to the cell nearest
/// the wheel center.
ContactResult contact_under_disc(const Dem& dem, double cx, double cy, double radius);

/// As above but contact candidates are restricted to cell centers inside
/// the clip box.
ContactResult contact_under_disc_clipped(const Dem& dem, double cx, double cy,
                                         double radius, const OrientedBox& clip);

}  // namespace ace
