#ifndef SPECTRAL_COMPLEXITY_HPP
#define SPECTRAL_COMPLEXITY_HPP

#include "spectral_complexity/analysis.hpp"
#include "spectral_complexity/benchmark.hpp"
#include "spectral_complexity/descriptors.hpp"
#include "spectral_complexity/errors.hpp"
#include "spectral_complexity/ingest.hpp"
#include "spectral_complexity/pipeline.hpp"
#include "spectral_complexity/random.hpp"
#include "spectral_complexity/reduce.hpp"
#include "spectral_complexity/report.hpp"
#include "spectral_complexity/similarity.hpp"
#include "spectral_complexity/spectral.hpp"
#include "spectral_complexity/svg.hpp"
#include "spectral_complexity/synthetic.hpp"
#include "spectral_complexity/version.hpp"

#endif // SPECTRAL_COMPLEXITY_HPP
