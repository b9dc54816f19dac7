// Copyright 2026 The Snakeforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/* C interface to the snakeforge simulation core.
 *
 * Every call returns an sf_status. On failure a message describing the
 * problem is available from sf_last_error() on the calling thread until its
 * next call into the library. Strings handed out through char ** parameters
 * are JSON documents owned by the caller and released with sf_string_free().
 * Quantities are SI throughout; pressures are gauge.
 */

#ifndef SNAKEFORGE_SNAKEFORGE_H_
#define SNAKEFORGE_SNAKEFORGE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SF_BUILDING_LIBRARY)
#    define SF_API __declspec(dllexport)
#  else
#    define SF_API __declspec(dllimport)
#  endif
#else
#  define SF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sf_status
{
  SF_OK = 0,
  SF_ERR_INVALID_ARGUMENT = 1,
  SF_ERR_PARSE = 2,
  SF_ERR_VALIDATION = 3,
  SF_ERR_INFEASIBLE = 4,
  SF_ERR_OUT_OF_RANGE = 5,
  SF_ERR_IO = 6,
  SF_ERR_PROTOCOL = 7,
  SF_ERR_INTERNAL = 8
} sf_status;

typedef enum sf_branch
{
  SF_BRANCH_FRONT = 0,
  SF_BRANCH_REAR = 1
} sf_branch;

typedef struct sf_assembly sf_assembly;
typedef struct sf_session sf_session;

SF_API const char * sf_version(void);
SF_API const char * sf_status_name(sf_status status);
SF_API const char * sf_last_error(void);
SF_API void sf_string_free(char * text);

/* Parses "2.9 psi", "60 s", "0.1 ms" into SI. dimension names the expected
 * kind: "pressure", "time", "length", "mass", "angle", "angular velocity",
 * "velocity", "force", "power", "frequency", "dimensionless", ... */
SF_API sf_status sf_parse_quantity(const char * text, const char * dimension, double * si_out);

/* ---- assembly ---------------------------------------------------------- */

/* path may be NULL for the default manifest. */
SF_API sf_status sf_assembly_load_file(const char * path, sf_assembly ** out);
SF_API sf_status sf_assembly_load_string(const char * yaml, sf_assembly ** out);
SF_API void sf_assembly_free(sf_assembly * assembly);
/* Name, segment list, masses, bladder counts and validation warnings. */
SF_API sf_status sf_assembly_describe(const sf_assembly * assembly, char ** json_out);
/* Path actually used when sf_assembly_load_file gets NULL. */
SF_API sf_status sf_default_assembly_path(char ** path_out);

/* ---- hydrostatics ------------------------------------------------------ */

SF_API sf_status sf_buoyancy_report(
  const sf_assembly * assembly, double fill_front, double fill_rear, char ** json_out);
/* Deficit, setpoint, buffered force and the torus/flat-pattern design for
 * one segment with its shells. segment may be NULL for the first segment
 * carrying a foam-filled shell. */
SF_API sf_status sf_bladder_design(const sf_assembly * assembly, const char * segment, char ** json_out);
SF_API sf_status sf_torus_volume(double major_diameter_m, double minor_diameter_m, double * volume_out);
SF_API sf_status sf_flat_pattern(
  double major_diameter_m, double minor_diameter_m, double * outer_out, double * inner_out);
SF_API sf_status sf_torus_from_pattern(
  double outer_m, double inner_m, double * major_diameter_out, double * minor_diameter_out);

/* ---- pneumatics -------------------------------------------------------- */

/* upstream_pa < 0 uses the regulator setting. */
SF_API sf_status sf_pneumatic_fill(
  const sf_assembly * assembly, sf_branch branch, double upstream_pa, double dt_s, double initial_fraction,
  char ** json_out);
/* settle_pa < 0 uses the bladder's settle pressure; deadline_s <= 0 the
 * manifest's fill deadline. */
SF_API sf_status sf_min_upstream(
  const sf_assembly * assembly, double settle_pa, double deadline_s, double dt_s, char ** json_out);
SF_API sf_status sf_inflation_error(double fill_time_s, double target_s, double * fraction_out);

/* ---- kinematics and actuation ------------------------------------------ */

/* request: {"mode": "...", "t_s": ..., plus the gait parameters of the
 * wire protocol}. Returns targets, frames and screw speeds. */
SF_API sf_status sf_gait(const sf_assembly * assembly, const char * request_json, char ** json_out);
SF_API sf_status sf_hysteresis_sweep(
  const sf_assembly * assembly, double load_kg, double amplitude_rad, int cycles, char ** json_out);
SF_API sf_status sf_screw_output(
  const sf_assembly * assembly, double motor_torque_nm, double speed_rad_s, char ** json_out);
SF_API sf_status sf_power_budget(
  const sf_assembly * assembly, const double * per_segment_draw_w, size_t count, char ** json_out);

/* ---- comms ------------------------------------------------------------- */

/* request: {"nodes", "first_hop_rtt_s", "per_node_increment_s", "jitter_s",
 * "seed", "duration_s", "streams": [{"node", "rate_hz", "phase_s"}],
 * "frames": bool}. Missing fields come from the assembly (may be NULL). */
SF_API sf_status sf_comms_simulate(const sf_assembly * assembly, const char * request_json, char ** json_out);
SF_API sf_status sf_round_trip_latency(const sf_assembly * assembly, int node, double * seconds_out);
SF_API sf_status sf_max_control_rate(const sf_assembly * assembly, double * hz_out);

/* ---- vertical dynamics ------------------------------------------------- */

/* Runs a scenario file at time step dt_s. Records and summary as JSON. */
SF_API sf_status sf_simulate_scenario(
  const sf_assembly * assembly, const char * scenario_path, double dt_s, char ** json_out);
/* Fits the pneumatic and hydro constants; reports them with the fitted runs. */
SF_API sf_status sf_calibrate(const sf_assembly * assembly, char ** json_out);

/* ---- sessions ---------------------------------------------------------- */

/* initial_json may be NULL: {"depth_m", "velocity_m_s", "fill_front", "fill_rear"}. */
SF_API sf_status sf_session_create(
  const sf_assembly * assembly, double tick_rate_hz, const char * initial_json, sf_session ** out);
SF_API void sf_session_free(sf_session * session);
/* Starts a command/telemetry log at path (truncated). */
SF_API sf_status sf_session_record(sf_session * session, const char * path);
/* Validates and queues one {type:"command"} message. Safe from any thread. */
SF_API sf_status sf_session_submit(sf_session * session, const char * message_json);
/* Advances one tick; telemetry_out receives the serialized record. */
SF_API sf_status sf_session_tick(sf_session * session, char ** telemetry_out);
SF_API sf_status sf_session_snapshot(const sf_session * session, char ** telemetry_out);
SF_API sf_status sf_session_tick_rate(const sf_session * session, double * hz_out);

/* Headless replay of a recorded log. Reports whether every record matched. */
SF_API sf_status sf_replay_file(const sf_assembly * assembly, const char * log_path, char ** json_out);

SF_API int sf_protocol_version(void);

#ifdef __cplusplus
}
#endif

#endif /* SNAKEFORGE_SNAKEFORGE_H_ */
