#pragma once

#include "calendar.hpp"
#include "dataset.hpp"
#include "dataset_io.hpp"
#include "distribution.hpp"
#include "errors.hpp"
#include "estimation.hpp"
#include "forecast.hpp"
#include "random.hpp"
#include "report.hpp"
#include "speed_field.hpp"
#include "synthetic.hpp"
#include "tod.hpp"
