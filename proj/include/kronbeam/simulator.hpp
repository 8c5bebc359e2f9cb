#ifndef KRONBEAM_SIMULATOR_HPP
#define KRONBEAM_SIMULATOR_HPP

#include "kronbeam/channel.hpp"
#include "kronbeam/codebooks.hpp"
#include "kronbeam/random.hpp"

namespace kronbeam {

enum class MeasurementDomain { physical, virtual_domain };

struct MeasurementSet {
    CVector y;
    double noise_var = 0.0;
    MeasurementDomain domain = MeasurementDomain::virtual_domain;
};

/**
 * y_t = sqrt(P) g_t^H H w_t + g_t^H n_t, with the beamformers synthesized
 * from the schedule's selections and n_t ~ CN(0, noise_var I).
 *
 * Throws `DimensionMismatch` if the schedule, channel and model disagree on
 * array sizes.
 */
MeasurementSet measure_physical(const Channel& ch, const MeasurementSchedule& sched, const ChannelModel& model, Rng& rng);
MeasurementSet measure_physical(const Channel& ch, const MeasurementSchedule& sched, const SystemConfig& cfg, Rng& rng);

/**
 * y_t = sqrt(P / (z1 z2)) * sum of h_v over the selected (transmit, receive)
 * grid pairs + CN(0, noise_var). Iterates whichever is smaller: the selected
 * pairs or the nonzero entries of h_v.
 */
MeasurementSet measure_virtual(const Channel& ch, const MeasurementSchedule& sched, const SystemConfig& cfg, Rng& rng);

/// noise_var = P / 10^(snr_db / 10)
double snr_to_noise_var(double snr_db, double pilot_power);

}  // namespace kronbeam

#endif
