#pragma once

#include "srlab/chart.hpp"
#include "srlab/config.hpp"
#include "srlab/constants.hpp"
#include "srlab/disks.hpp"
#include "srlab/experiments.hpp"
#include "srlab/hoelder_field.hpp"
#include "srlab/models.hpp"
#include "srlab/one_form.hpp"
#include "srlab/paths.hpp"
#include "srlab/report.hpp"
#include "srlab/rng.hpp"
#include "srlab/scaling.hpp"
#include "srlab/sr_distance.hpp"
#include "srlab/vec3.hpp"
