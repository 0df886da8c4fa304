#include "flapevo/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "flapevo/errors.hpp"
#include "flapevo/textio.hpp"

namespace flapevo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxAmplitudeRad = 70.0 * kPi / 180.0;  // rig stroke limit
constexpr double kMinStepsPerCycle = 200.0;
constexpr double kJointStopRad = kPi / 2.0;  // mechanical joint stop
// Rotational-force pitch-axis location, as a fraction of chord from the
// leading edge. The pitch axis is the leading-edge spar itself.
constexpr double kPitchAxisChordFraction = 0.0;

Eigen::Matrix3d rot_x(double a) {
    return Eigen::AngleAxisd(a, Eigen::Vector3d::UnitX()).toRotationMatrix();
}
Eigen::Matrix3d rot_y(double a) {
    return Eigen::AngleAxisd(a, Eigen::Vector3d::UnitY()).toRotationMatrix();
}
Eigen::Matrix3d rot_z(double a) {
    return Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}

}  // namespace

void FlapProfile::validate() const {
    if (!std::isfinite(frequency_hz) || frequency_hz <= 0.0) {
        throw ConfigError("flap frequency_hz must be positive and finite");
    }
    if (!std::isfinite(amplitude_rad) || std::abs(amplitude_rad) > kMaxAmplitudeRad + 1e-12) {
        throw ConfigError("flap amplitude magnitude exceeds the 70 degree stroke limit");
    }
}

double FlapProfile::angle(double t) const {
    return amplitude_rad * std::sin(2.0 * kPi * frequency_hz * t);
}

double FlapProfile::rate(double t) const {
    const double w = 2.0 * kPi * frequency_hz;
    return amplitude_rad * w * std::cos(w * t);
}

double FlapProfile::acceleration(double t) const {
    const double w = 2.0 * kPi * frequency_hz;
    return -amplitude_rad * w * w * std::sin(w * t);
}

long SimConfig::steps_per_cycle(const FlapProfile& profile) const {
    return std::lround(1.0 / (profile.frequency_hz * dt_s));
}

long SimConfig::total_steps() const { return std::lround(duration_s / dt_s); }

void SimConfig::validate(const FlapProfile& profile) const {
    profile.validate();
    if (!std::isfinite(dt_s) || dt_s <= 0.0) throw ConfigError("dt_s must be positive");
    if (!std::isfinite(duration_s) || duration_s <= 0.0) {
        throw ConfigError("duration_s must be positive");
    }
    if (!std::isfinite(rho_air_kg_m3) || rho_air_kg_m3 <= 0.0) {
        throw ConfigError("rho_air_kg_m3 must be positive");
    }
    if (!std::isfinite(gravity_m_s2) || gravity_m_s2 < 0.0) {
        throw ConfigError("gravity_m_s2 must be non-negative");
    }
    if (!std::isfinite(joint_damping_nms) || joint_damping_nms < 0.0) {
        throw ConfigError("joint_damping_nms must be non-negative");
    }
    if (settle_cycles < 0) throw ConfigError("settle_cycles must be non-negative");
    if (average_cycles < 1) throw ConfigError("average_cycles must be at least 1");
    if (dt_s * profile.frequency_hz > 1.0 / kMinStepsPerCycle + 1e-15) {
        throw ConfigError("dt_s too coarse: need at least 200 steps per flap cycle");
    }
    const double spc_real = 1.0 / (profile.frequency_hz * dt_s);
    const double spc_round = std::round(spc_real);
    if (std::abs(spc_real - spc_round) > 1e-6 * spc_round) {
        throw ConfigError("dt_s must divide the flap period into a whole number of steps");
    }
    const double steps_real = duration_s / dt_s;
    const double steps_round = std::round(steps_real);
    if (std::abs(steps_real - steps_round) > 1e-6 * std::max(1.0, steps_round)) {
        throw ConfigError("duration_s must be a whole number of steps");
    }
    const long needed =
        static_cast<long>(settle_cycles + average_cycles) * steps_per_cycle(profile);
    if (total_steps() < needed) {
        throw ConfigError(
            "duration_s too short for settle_cycles + average_cycles at this frequency");
    }
}

WingState make_initial_state(std::size_t blade_count, const FlapProfile& profile) {
    WingState s;
    s.time_s = 0.0;
    s.root_angle_rad = profile.angle(0.0);
    s.root_rate_rad_s = profile.rate(0.0);
    s.twist_rad.assign(blade_count, 0.0);
    s.bend_rad.assign(blade_count, 0.0);
    s.twist_rate_rad_s.assign(blade_count, 0.0);
    s.bend_rate_rad_s.assign(blade_count, 0.0);
    return s;
}

BladeWrench blade_quasistatic_wrench(const BladeAeroInput& in, const CoefficientTable& table,
                                     double rho_air) {
    BladeWrench out;
    const Eigen::Vector3d& s = in.span_axis;
    const Eigen::Vector3d& c = in.chord_axis;
    const Eigen::Vector3d& n = in.normal_axis;
    // Flow resolved in the plane normal to the span axis (blade-element view).
    const Eigen::Vector3d u_vec = in.centroid_velocity - in.centroid_velocity.dot(s) * s;
    const double u = u_vec.norm();
    Eigen::Vector3d force = Eigen::Vector3d::Zero();
    if (u > 1e-12) {
        const Eigen::Vector3d u_hat = u_vec / u;
        const double alpha = std::atan2(u_vec.dot(n), u_vec.dot(c));
        const Coefficients cf = coeff_lookup(table, alpha);
        const double q = 0.5 * rho_air * in.chord_m * in.width_m * u * u;
        // Lift is perpendicular to the flow in the chord/normal plane; this
        // cross product picks the side consistent with the sign of cl.
        const Eigen::Vector3d lift_dir = s.cross(u_hat);
        force += q * (cf.cl * lift_dir - cf.cd * u_hat);
        // Rotational force from pitching in a moving flow, directed along the
        // plate normal: C_R * rho * U * c^2 * width * pitch_rate, with
        // C_R = pi * (0.75 - pitch axis chord fraction).
        const double c_r = kPi * (0.75 - kPitchAxisChordFraction);
        force += c_r * rho_air * u * in.chord_m * in.chord_m * in.width_m * in.pitch_rate_rad_s * n;
    }
    out.force = force;
    out.normal_force = force.dot(n);
    out.axial_force = force.dot(c);
    return out;
}

ChainSimulator::ChainSimulator(const WingPhenotype& wing, const MaterialConfig& material,
                               const FlapProfile& profile, const SimConfig& config,
                               const CoefficientTable& table)
    : profile_(profile), config_(config), table_(table) {
    config_.validate(profile_);
    table_.validate();
    blades_.reserve(wing.blades.size());
    for (std::size_t i = 0; i < wing.blades.size(); ++i) {
        const BladeSpec& spec = wing.blades[i];
        const bool ok = std::isfinite(spec.span_offset_mm) && spec.span_offset_mm > 0.0 &&
                        std::isfinite(spec.chord_mm) && spec.chord_mm > 0.0 &&
                        std::isfinite(spec.k_twist) && spec.k_twist >= 0.0 &&
                        std::isfinite(spec.k_bend) && spec.k_bend >= 0.0;
        if (!ok) {
            throw ConfigError("blade " + std::to_string(i) +
                              " has non-positive dimensions or negative stiffness");
        }
        const BladeMassProps props = wing_mass_model(spec, material);
        BladeBody body;
        body.dr_m = spec.span_offset_mm * 1e-3;
        body.chord_m = spec.chord_mm * 1e-3;
        body.k_twist = spec.k_twist;
        body.k_bend = spec.k_bend;
        body.mass = props.mass_kg;
        body.com_local = props.com_m;
        body.centroid_local = props.centroid_m;
        body.inertia_com_local = props.inertia_com;
        total_mass_kg_ += body.mass;
        blades_.push_back(body);
    }
}

double ChainSimulator::tare_n() const { return -config_.gravity_m_s2 * total_mass_kg_; }

void ChainSimulator::update_kinematics(const WingState& state,
                                       std::vector<FrameCache>& frames) const {
    const std::size_t count = blades_.size();
    frames.resize(count);
    const Eigen::Matrix3d r_root = rot_z(state.root_angle_rad);
    const Eigen::Vector3d omega_root(0.0, 0.0, state.root_rate_rad_s);
    for (std::size_t i = 0; i < count; ++i) {
        const Eigen::Matrix3d& r_parent = (i == 0) ? r_root : frames[i - 1].R;
        const Eigen::Vector3d omega_parent = (i == 0) ? omega_root : frames[i - 1].omega;
        FrameCache& f = frames[i];
        if (i == 0) {
            f.o = Eigen::Vector3d::Zero();  // the root joint sits on the drive axis
            f.v_o = Eigen::Vector3d::Zero();
        } else {
            f.o = frames[i - 1].o +
                  frames[i - 1].R * Eigen::Vector3d(0.0, blades_[i - 1].dr_m, 0.0);
            f.v_o = frames[i - 1].v_o + frames[i - 1].omega.cross(f.o - frames[i - 1].o);
        }
        // Bend about the parent chord axis, then twist about the post-bend span axis.
        f.bend_axis = r_parent.col(0);
        const Eigen::Matrix3d r_bent = r_parent * rot_x(state.bend_rad[i]);
        f.twist_axis = r_bent.col(1);
        f.R = r_bent * rot_y(state.twist_rad[i]);
        f.omega = omega_parent + state.bend_rate_rad_s[i] * f.bend_axis +
                  state.twist_rate_rad_s[i] * f.twist_axis;
        f.com = f.o + f.R * blades_[i].com_local;
        f.v_com = f.v_o + f.omega.cross(f.com - f.o);
        f.centroid = f.o + f.R * blades_[i].centroid_local;
        f.v_centroid = f.v_o + f.omega.cross(f.centroid - f.o);
        f.I_w = f.R * blades_[i].inertia_com_local * f.R.transpose();
    }
}

void ChainSimulator::propagate_accelerations(const WingState& state,
                                             const std::vector<FrameCache>& frames,
                                             const Eigen::VectorXd* qdd, double root_acc,
                                             std::vector<Eigen::Vector3d>& alpha,
                                             std::vector<Eigen::Vector3d>& a_com) const {
    const std::size_t count = blades_.size();
    alpha.resize(count);
    a_com.resize(count);
    Eigen::Vector3d alpha_parent(0.0, 0.0, root_acc);
    Eigen::Vector3d omega_parent(0.0, 0.0, state.root_rate_rad_s);
    Eigen::Vector3d a_origin = Eigen::Vector3d::Zero();  // blade 0 joint is on the drive axis
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) {
            const Eigen::Vector3d d = frames[i].o - frames[i - 1].o;
            a_origin += alpha[i - 1].cross(d) +
                        frames[i - 1].omega.cross(frames[i - 1].omega.cross(d));
            omega_parent = frames[i - 1].omega;
            alpha_parent = alpha[i - 1];
        }
        const double bend_rate = state.bend_rate_rad_s[i];
        const double twist_rate = state.twist_rate_rad_s[i];
        const double bend_acc = qdd ? (*qdd)[static_cast<int>(2 * i)] : 0.0;
        const double twist_acc = qdd ? (*qdd)[static_cast<int>(2 * i + 1)] : 0.0;
        const Eigen::Vector3d& a1 = frames[i].bend_axis;   // fixed in the parent body
        const Eigen::Vector3d& a2 = frames[i].twist_axis;  // fixed in the post-bend frame
        const Eigen::Vector3d omega_mid = omega_parent + bend_rate * a1;
        alpha[i] = alpha_parent + bend_acc * a1 + twist_acc * a2 +
                   bend_rate * omega_parent.cross(a1) + twist_rate * omega_mid.cross(a2);
        const Eigen::Vector3d r = frames[i].com - frames[i].o;
        a_com[i] = a_origin + alpha[i].cross(r) + frames[i].omega.cross(frames[i].omega.cross(r));
    }
}

Eigen::MatrixXd ChainSimulator::mass_matrix(const WingState& state) const {
    const std::size_t count = blades_.size();
    const int n = static_cast<int>(2 * count);
    std::vector<FrameCache> frames;
    update_kinematics(state, frames);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd jv(3, n), jw(3, n);
    for (std::size_t b = 0; b < count; ++b) {
        jv.setZero();
        jw.setZero();
        for (std::size_t k = 0; k <= b; ++k) {
            const Eigen::Vector3d lever = frames[b].com - frames[k].o;
            jw.col(static_cast<int>(2 * k)) = frames[k].bend_axis;
            jv.col(static_cast<int>(2 * k)) = frames[k].bend_axis.cross(lever);
            jw.col(static_cast<int>(2 * k + 1)) = frames[k].twist_axis;
            jv.col(static_cast<int>(2 * k + 1)) = frames[k].twist_axis.cross(lever);
        }
        m.noalias() += blades_[b].mass * jv.transpose() * jv;
        m.noalias() += jw.transpose() * frames[b].I_w * jw;
    }
    return m;
}

EnergySnapshot ChainSimulator::energies(const WingState& state) const {
    std::vector<FrameCache> frames;
    update_kinematics(state, frames);
    EnergySnapshot e;
    for (std::size_t i = 0; i < blades_.size(); ++i) {
        const FrameCache& f = frames[i];
        e.kinetic += 0.5 * blades_[i].mass * f.v_com.squaredNorm() +
                     0.5 * f.omega.dot(f.I_w * f.omega);
        e.spring += 0.5 * blades_[i].k_bend * state.bend_rad[i] * state.bend_rad[i] +
                    0.5 * blades_[i].k_twist * state.twist_rad[i] * state.twist_rad[i];
        e.gravity += blades_[i].mass * config_.gravity_m_s2 * f.com.z();
    }
    return e;
}

StepResult ChainSimulator::step(WingState& state) const {
    const std::size_t count = blades_.size();
    const int n = static_cast<int>(2 * count);
    if (state.twist_rad.size() != count || state.bend_rad.size() != count ||
        state.twist_rate_rad_s.size() != count || state.bend_rate_rad_s.size() != count) {
        throw ConfigError("wing state joint count does not match the wing");
    }
    const double dt = config_.dt_s;

    std::vector<FrameCache> frames;
    update_kinematics(state, frames);

    Eigen::VectorXd v(n);
    for (std::size_t i = 0; i < count; ++i) {
        v[static_cast<int>(2 * i)] = state.bend_rate_rad_s[i];
        v[static_cast<int>(2 * i + 1)] = state.twist_rate_rad_s[i];
    }

    // Aerodynamic force per blade, applied at the plate area centroid.
    std::vector<Eigen::Vector3d> f_aero(count);
    for (std::size_t i = 0; i < count; ++i) {
        BladeAeroInput in;
        in.centroid_velocity = frames[i].v_centroid;
        in.chord_axis = frames[i].R.col(0);
        in.span_axis = frames[i].R.col(1);
        in.normal_axis = frames[i].R.col(2);
        in.pitch_rate_rad_s = frames[i].omega.dot(in.span_axis);
        in.chord_m = blades_[i].chord_m;
        in.width_m = blades_[i].dr_m;
        f_aero[i] = blade_quasistatic_wrench(in, table_, config_.rho_air_kg_m3).force;
    }

    // Velocity-product bias: body accelerations with all joint accelerations zero.
    std::vector<Eigen::Vector3d> alpha0, acom0;
    propagate_accelerations(state, frames, nullptr, profile_.acceleration(state.time_s), alpha0,
                            acom0);

    Eigen::MatrixXd m_mat = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd bias = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd q_gen = Eigen::VectorXd::Zero(n);
    const Eigen::Vector3d g_vec(0.0, 0.0, -config_.gravity_m_s2);
    Eigen::MatrixXd jv(3, n), jw(3, n);
    for (std::size_t b = 0; b < count; ++b) {
        jv.setZero();
        jw.setZero();
        for (std::size_t k = 0; k <= b; ++k) {
            const Eigen::Vector3d lever = frames[b].com - frames[k].o;
            jw.col(static_cast<int>(2 * k)) = frames[k].bend_axis;
            jv.col(static_cast<int>(2 * k)) = frames[k].bend_axis.cross(lever);
            jw.col(static_cast<int>(2 * k + 1)) = frames[k].twist_axis;
            jv.col(static_cast<int>(2 * k + 1)) = frames[k].twist_axis.cross(lever);
        }
        m_mat.noalias() += blades_[b].mass * jv.transpose() * jv;
        m_mat.noalias() += jw.transpose() * frames[b].I_w * jw;
        const Eigen::Vector3d h0 =
            frames[b].I_w * alpha0[b] + frames[b].omega.cross(frames[b].I_w * frames[b].omega);
        bias.noalias() += jv.transpose() * (blades_[b].mass * acom0[b]);
        bias.noalias() += jw.transpose() * h0;
        q_gen.noalias() += jv.transpose() * (blades_[b].mass * g_vec);
        // The aero force acts at the centroid, not the COM: shift each column.
        const Eigen::Vector3d shift = frames[b].centroid - frames[b].com;
        for (std::size_t k = 0; k <= b; ++k) {
            q_gen[static_cast<int>(2 * k)] +=
                (jv.col(static_cast<int>(2 * k)) + frames[k].bend_axis.cross(shift))
                    .dot(f_aero[b]);
            q_gen[static_cast<int>(2 * k + 1)] +=
                (jv.col(static_cast<int>(2 * k + 1)) + frames[k].twist_axis.cross(shift))
                    .dot(f_aero[b]);
        }
    }
    for (std::size_t i = 0; i < count; ++i) {
        q_gen[static_cast<int>(2 * i)] -= blades_[i].k_bend * state.bend_rad[i];
        q_gen[static_cast<int>(2 * i + 1)] -= blades_[i].k_twist * state.twist_rad[i];
    }

    // Joint damping is handled implicitly: (M + dt*c*I) v_new = M v + dt (Q - C).
    // An explicit damping force would need dt << I/c for the lightest blades,
    // far below the step size the rest of the dynamics supports.
    Eigen::MatrixXd a_mat = m_mat;
    a_mat.diagonal().array() += dt * config_.joint_damping_nms;
    const Eigen::VectorXd rhs = m_mat * v + dt * (q_gen - bias);
    const Eigen::VectorXd v_new = a_mat.ldlt().solve(rhs);

    // Base wrench from the accelerations actually taken this step.
    const Eigen::VectorXd qdd = (v_new - v) / dt;
    std::vector<Eigen::Vector3d> alpha, acom;
    propagate_accelerations(state, frames, &qdd, profile_.acceleration(state.time_s), alpha, acom);
    Eigen::Vector3d force = Eigen::Vector3d::Zero();
    Eigen::Vector3d torque = Eigen::Vector3d::Zero();
    for (std::size_t b = 0; b < count; ++b) {
        const Eigen::Vector3d weight = blades_[b].mass * g_vec;
        const Eigen::Vector3d inertial = blades_[b].mass * acom[b];
        force += weight + f_aero[b] - inertial;
        torque += frames[b].com.cross(weight) + frames[b].centroid.cross(f_aero[b]) -
                  frames[b].com.cross(inertial) -
                  (frames[b].I_w * alpha[b] + frames[b].omega.cross(frames[b].I_w * frames[b].omega));
    }
    const double drive_torque = -torque.z();

    StepResult result;
    result.sample.t = state.time_s;
    result.sample.root_angle = state.root_angle_rad;
    result.sample.fx = force.x();
    result.sample.fy = force.y();
    result.sample.fz = force.z();
    result.sample.tx = torque.x();
    result.sample.ty = torque.y();
    result.sample.tz = torque.z();
    result.sample.twist_rad = state.twist_rad;
    result.sample.bend_rad = state.bend_rad;
    result.drive_torque_nm = drive_torque;
    result.root_rate_rad_s = state.root_rate_rad_s;
    result.drive_work_j = drive_torque * state.root_rate_rad_s * dt;
    double aero_work = 0.0;
    for (std::size_t b = 0; b < count; ++b) aero_work += f_aero[b].dot(frames[b].v_centroid);
    result.aero_work_j = aero_work * dt;
    result.damping_loss_j = config_.joint_damping_nms * v_new.squaredNorm() * dt;

    // Semi-implicit update: new rates first, then angles, then hard stops.
    const double t_new = state.time_s + dt;
    for (std::size_t i = 0; i < count; ++i) {
        state.bend_rate_rad_s[i] = v_new[static_cast<int>(2 * i)];
        state.twist_rate_rad_s[i] = v_new[static_cast<int>(2 * i + 1)];
        state.bend_rad[i] += dt * state.bend_rate_rad_s[i];
        state.twist_rad[i] += dt * state.twist_rate_rad_s[i];
        if (std::abs(state.bend_rad[i]) > kJointStopRad) {
            state.bend_rad[i] = std::copysign(kJointStopRad, state.bend_rad[i]);
            state.bend_rate_rad_s[i] = 0.0;
            ++result.stop_events;
        }
        if (std::abs(state.twist_rad[i]) > kJointStopRad) {
            state.twist_rad[i] = std::copysign(kJointStopRad, state.twist_rad[i]);
            state.twist_rate_rad_s[i] = 0.0;
            ++result.stop_events;
        }
    }
    state.time_s = t_new;
    state.root_angle_rad = profile_.angle(t_new);
    state.root_rate_rad_s = profile_.rate(t_new);

    for (std::size_t i = 0; i < count; ++i) {
        const bool finite =
            std::isfinite(state.bend_rad[i]) && std::isfinite(state.twist_rad[i]) &&
            std::isfinite(state.bend_rate_rad_s[i]) && std::isfinite(state.twist_rate_rad_s[i]);
        if (!finite) {
            throw SimAbort("simulation diverged (non-finite joint state)", t_new,
                           static_cast<int>(i));
        }
    }
    return result;
}

SimResult simulate(const WingPhenotype& wing, const MaterialConfig& material,
                   const FlapProfile& profile, const SimConfig& config,
                   const CoefficientTable& table) {
    config.validate(profile);
    ChainSimulator sim(wing, material, profile, config, table);
    WingState state = make_initial_state(wing.blades.size(), profile);

    const long spc = config.steps_per_cycle(profile);
    const long total = config.total_steps();
    const long window_start = total - static_cast<long>(config.average_cycles) * spc;

    SimResult res;
    res.tare_n = sim.tare_n();
    res.per_cycle_lift_n.assign(static_cast<std::size_t>(config.average_cycles), 0.0);
    if (config.record_timeseries) res.series.reserve(static_cast<std::size_t>(total));

    double fz_sum = 0.0, power_sum = 0.0, signed_power_sum = 0.0, torque_sq_sum = 0.0;
    long window_count = 0;
    for (long k = 0; k < total; ++k) {
        StepResult r = sim.step(state);
        res.stop_events += r.stop_events;
        for (std::size_t i = 0; i < r.sample.twist_rad.size(); ++i) {
            res.max_abs_joint_angle_rad =
                std::max({res.max_abs_joint_angle_rad, std::abs(r.sample.twist_rad[i]),
                          std::abs(r.sample.bend_rad[i])});
        }
        if (k >= window_start) {
            fz_sum += r.sample.fz;
            const double p = r.drive_torque_nm * r.root_rate_rad_s;
            signed_power_sum += p;
            power_sum += std::max(0.0, p);
            torque_sq_sum += r.drive_torque_nm * r.drive_torque_nm;
            res.per_cycle_lift_n[static_cast<std::size_t>((k - window_start) / spc)] +=
                r.sample.fz;
            ++window_count;
        }
        if (config.record_timeseries) res.series.push_back(std::move(r.sample));
    }
    for (std::size_t i = 0; i < state.twist_rad.size(); ++i) {
        res.max_abs_joint_angle_rad =
            std::max({res.max_abs_joint_angle_rad, std::abs(state.twist_rad[i]),
                      std::abs(state.bend_rad[i])});
    }
    res.steps = total;
    res.lift_mean_n = fz_sum / static_cast<double>(window_count) - res.tare_n;
    for (double& cycle : res.per_cycle_lift_n) {
        cycle = cycle / static_cast<double>(spc) - res.tare_n;
    }
    res.drive_power_mean_w = power_sum / static_cast<double>(window_count);
    res.signed_drive_power_mean_w = signed_power_sum / static_cast<double>(window_count);
    res.drive_torque_rms_nm = std::sqrt(torque_sq_sum / static_cast<double>(window_count));
    return res;
}

SimResult simulate(const WingPhenotype& wing, const MaterialConfig& material,
                   const FlapProfile& profile, const SimConfig& config) {
    return simulate(wing, material, profile, config, CoefficientTable::flat_plate_default());
}

void export_timeseries(const SimResult& result, const std::filesystem::path& path) {
    if (result.series.empty()) {
        throw ConfigError("no time series recorded: enable record_timeseries");
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    const std::size_t joints = result.series.front().twist_rad.size();
    out << "t,root_angle,fx,fy,fz,tx,ty,tz";
    for (std::size_t i = 0; i < joints; ++i) {
        out << ",twist_" << i << ",bend_" << i;
    }
    out << "\n";
    for (const SimSample& s : result.series) {
        out << format_g9(s.t) << ',' << format_g9(s.root_angle) << ',' << format_g9(s.fx) << ','
            << format_g9(s.fy) << ',' << format_g9(s.fz) << ',' << format_g9(s.tx) << ','
            << format_g9(s.ty) << ',' << format_g9(s.tz);
        for (std::size_t i = 0; i < joints; ++i) {
            out << ',' << format_g9(s.twist_rad[i]) << ',' << format_g9(s.bend_rad[i]);
        }
        out << "\n";
    }
    out.close();
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace flapevo
