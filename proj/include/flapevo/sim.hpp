#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <vector>

#include "flapevo/coeff_table.hpp"
#include "flapevo/wing.hpp"

namespace flapevo {

// Root drive: theta(t) = amplitude * sin(2*pi*frequency*t) about the vertical
// axis. Amplitude may be zero (still rig) or negative (mirrored stroke); its
// magnitude is capped at the rig limit of 70 degrees.
struct FlapProfile {
    double frequency_hz = 5.0;
    double amplitude_rad = 0.6981317007977318;  // 40 degrees

    void validate() const;
    double angle(double t) const;
    double rate(double t) const;
    double acceleration(double t) const;
};

struct SimConfig {
    double dt_s = 1e-4;
    double duration_s = 2.0;
    double rho_air_kg_m3 = 1.225;
    double gravity_m_s2 = 9.81;
    double joint_damping_nms = 1e-5;  // viscous damping per joint axis
    int settle_cycles = 5;            // cycles discarded before averaging
    int average_cycles = 5;           // cycles contributing to the reported means
    bool record_timeseries = false;

    // Enforces dt*frequency <= 1/200, whole steps per cycle, and that the
    // settle+average window fits inside the duration. Throws ConfigError.
    void validate(const FlapProfile& profile) const;
    long steps_per_cycle(const FlapProfile& profile) const;
    long total_steps() const;
};

// Joint coordinates: per joint, twist about the local span axis and bend about
// the local chord axis. Joint i connects blade i to its inboard neighbour
// (the driven root for i = 0).
struct WingState {
    double time_s = 0.0;
    double root_angle_rad = 0.0;
    double root_rate_rad_s = 0.0;
    std::vector<double> twist_rad, bend_rad;
    std::vector<double> twist_rate_rad_s, bend_rate_rad_s;
};

WingState make_initial_state(std::size_t blade_count, const FlapProfile& profile);

// Inputs for the quasi-static aerodynamic load on one blade, all world frame.
struct BladeAeroInput {
    Eigen::Vector3d centroid_velocity;  // velocity of the plate area centroid, m/s
    Eigen::Vector3d span_axis;          // unit vectors of the blade frame
    Eigen::Vector3d chord_axis;
    Eigen::Vector3d normal_axis;
    double pitch_rate_rad_s = 0.0;      // angular velocity component about span_axis
    double chord_m = 0.0;
    double width_m = 0.0;               // spanwise extent of the blade
};

struct BladeWrench {
    Eigen::Vector3d force = Eigen::Vector3d::Zero();   // applied at the area centroid
    Eigen::Vector3d torque = Eigen::Vector3d::Zero();  // zero: centre-of-pressure travel ignored
    double normal_force = 0.0;  // force component along the plate normal
    double axial_force = 0.0;   // force component along the chord axis
};

// Translational lift/drag from the coefficient table (velocity resolved in the
// plane normal to the span axis) plus the rotational force
// C_R*rho*U*c^2*dr*pitch_rate along the plate normal, C_R = pi*(0.75 - x0)
// with the pitch axis on the leading-edge spar (x0 = 0).
BladeWrench blade_quasistatic_wrench(const BladeAeroInput& input, const CoefficientTable& table,
                                     double rho_air);

struct EnergySnapshot {
    double kinetic = 0.0;
    double spring = 0.0;   // elastic energy in the joint springs
    double gravity = 0.0;  // potential relative to the root plane
    double total() const { return kinetic + spring + gravity; }
};

// Per-step record. The sample captures the pre-step state and the base wrench
// (force/torque the wing assembly exerts on its mount, about the root origin)
// computed from that state's accelerations.
struct SimSample {
    double t = 0.0;
    double root_angle = 0.0;
    double fx = 0.0, fy = 0.0, fz = 0.0;
    double tx = 0.0, ty = 0.0, tz = 0.0;
    std::vector<double> twist_rad, bend_rad;
};

struct StepResult {
    SimSample sample;
    double drive_torque_nm = 0.0;     // actuator torque about the root axis
    double root_rate_rad_s = 0.0;
    double drive_work_j = 0.0;        // torque * root rate * dt
    double aero_work_j = 0.0;         // work done by aerodynamic forces on the wing
    double damping_loss_j = 0.0;      // energy removed by joint damping (>= 0)
    int stop_events = 0;              // joint angles clamped at +-pi/2 this step
};

struct SimResult {
    double lift_mean_n = 0.0;          // mean vertical mount force minus tare
    double drive_power_mean_w = 0.0;   // mean of max(0, torque * root rate)
    double drive_torque_rms_nm = 0.0;
    std::vector<double> per_cycle_lift_n;  // one mean per averaged cycle
    double tare_n = 0.0;               // static vertical mount reading (weight, negative)
    double signed_drive_power_mean_w = 0.0;
    double max_abs_joint_angle_rad = 0.0;
    long steps = 0;
    int stop_events = 0;
    std::vector<SimSample> series;     // filled when SimConfig::record_timeseries
};

// Articulated chain of thin plates joined by two-axis torsion springs, driven
// at the root. Holds the constant model; the state travels in and out so tests
// can probe arbitrary configurations.
class ChainSimulator {
public:
    ChainSimulator(const WingPhenotype& wing, const MaterialConfig& material,
                   const FlapProfile& profile, const SimConfig& config,
                   const CoefficientTable& table);

    // One semi-implicit Euler step: rates update from the dynamics solve (joint
    // damping handled implicitly), then angles integrate with the new rates,
    // then hard stops clamp angles to +-pi/2 and zero the clamped rates.
    StepResult step(WingState& state) const;

    EnergySnapshot energies(const WingState& state) const;
    double total_mass_kg() const { return total_mass_kg_; }
    double tare_n() const;  // static vertical mount reading at rest
    std::size_t blade_count() const { return blades_.size(); }

    // Diagnostics for verification: the joint-space mass matrix at a state.
    Eigen::MatrixXd mass_matrix(const WingState& state) const;

private:
    struct BladeBody {
        double dr_m = 0.0, chord_m = 0.0;
        double k_twist = 0.0, k_bend = 0.0;
        double mass = 0.0;
        Eigen::Vector3d com_local, centroid_local;
        Eigen::Matrix3d inertia_com_local;
    };
    struct FrameCache {
        Eigen::Matrix3d R, I_w;
        Eigen::Vector3d o, omega, v_o, com, v_com, centroid, v_centroid;
        Eigen::Vector3d bend_axis, twist_axis;
    };

    void update_kinematics(const WingState& state, std::vector<FrameCache>& frames) const;
    void propagate_accelerations(const WingState& state, const std::vector<FrameCache>& frames,
                                 const Eigen::VectorXd* qdd, double root_acc,
                                 std::vector<Eigen::Vector3d>& alpha,
                                 std::vector<Eigen::Vector3d>& a_com) const;

    std::vector<BladeBody> blades_;
    FlapProfile profile_;
    SimConfig config_;
    CoefficientTable table_;
    double total_mass_kg_ = 0.0;
};

// Full run: settle, then average. Deterministic for identical inputs.
SimResult simulate(const WingPhenotype& wing, const MaterialConfig& material,
                   const FlapProfile& profile, const SimConfig& config,
                   const CoefficientTable& table);
SimResult simulate(const WingPhenotype& wing, const MaterialConfig& material,
                   const FlapProfile& profile, const SimConfig& config);

// CSV export of a recorded time series: t, root angle, base wrench, per-joint
// twist/bend, all printed at 9 significant digits.
void export_timeseries(const SimResult& result, const std::filesystem::path& path);

}  // namespace flapevo
