#pragma once
// Frozen reference values produced by tools/oracles/gen_tables.py
// (independent solvers: Clarabel conic QP, scipy NNLS, sklearn isotonic,
//  mpmath 60-digit arithmetic). Do not edit by hand.

#include <vector>

namespace oracle {

struct ProjCase { double alpha; std::vector<double> x; std::vector<double> proj; };
struct MatCase { int rows; int cols; std::vector<double> mat_rowmajor;
                 std::vector<double> x; std::vector<double> proj; };

// Projections onto circular cones (axis e1, half-angle alpha).
inline const std::vector<ProjCase> kCircularCases = {
  {0.5235987755982988, {-0.21118912055729136, -0.5177334709845255}, {0.06579332813998813, -0.03798579485872133}},
  {0.7853981633974483, {0.4487875108873869, -5.369690531033927}, {2.9092390273503175, -2.9092390265179495}},
  {1.0471975511965976, {0.2844522535691842, -0.3216956064836901}, {0.2844522535691842, -0.3216956064836901}},
  {1.0, {-2.178150973347906, 0.29561182539389}, {0.0, 0.0}},
  {0.3, {-1.9514738484064804, -0.15841288562715672}, {0.0, 0.0}},
  {0.5235987755982988, {-0.7312848653804448, 0.40969535789355127, 0.44244173776631784}, {0.0, 0.0, 0.0}},
  {0.7853981633974483, {-2.783588072310687, -2.79950385831555, -4.410111491966885}, {1.220020717244629, -0.6538466598171632, -1.0300170367280532}},
  {1.0471975511965976, {-0.7876892940867893, 0.3194143920162998, 0.8572703661247674}, {0.19921639146473885, 0.12047405391516013, 0.3233380802174795}},
  {1.0, {0.686399168889326, 0.10439775796546824, -2.6023413313303703}, {1.384480988288107, 0.08643050311598412, -2.154468399798268}},
  {0.3, {0.19577021284431775, -0.8156895315256701, 0.23962888489868106}, {0.41869129201514005, -0.12426509296405513, 0.036505930881703}},
  {0.5235987755982988, {-0.20259332624012352, 0.8560181034854327, 0.2024703525539789, 1.3688252896097017}, {0.5526085754932712, 0.16785201466176003, 0.03970132926755377, 0.26840563493394104}},
  {0.7853981633974483, {-1.2246433424147702, 2.267835247339897, 0.6754821722237259, 5.0896674603206815}, {2.1941025541512214, 0.8865129982168949, 0.26405080635488004, 1.9895873677192215}},
  {1.0471975511965976, {-1.9620539547190585, 0.8742582951813314, -1.0236516100709405, -0.8686467389750054}, {0.20321790872322884, 0.1920753584480676, -0.22489720831248988, -0.19084249434403608}},
  {1.0, {-0.055089345187139815, -4.531678083319409, -3.583743079735676, -1.516625624757764}, {2.6996391899146137, -3.189759049439387, -2.5225262494990295, -1.067522940120054}},
  {0.3, {-0.32248383162699573, -1.9036789280897755, -0.8736312382373598, -0.14591356690623353}, {0.2984542082001201, -0.08370589146699309, -0.038414083662443324, -0.0064159060726021264}},
  {0.5235987755982988, {-0.13192758477062216, -0.6623081572224156, -0.004088789106296888, -0.5133744270857837, 1.173498778229933}, {0.5254522461681028, -0.1393387491780318, -0.0008602140159552226, -0.10800554054794739, 0.24688485282477932}},
  {0.7853981633974483, {-2.427405546023735, 0.17731139639693774, -1.4687850188408569, 2.5636873593932576, -2.914645534706618}, {0.8633396094153476, 0.036850464147450586, -0.30525623720169565, 0.532808781851233, -0.6057480960715512}},
  {1.0471975511965976, {0.8766026328650387, -1.1953017929996643, -1.366996897121547, -0.5484695736103665, 0.09212685627119044}, {1.0415024450727692, -1.1353806484126392, -1.298468581342086, -0.5209744884240419, 0.08750848565775886}},
  {1.0, {-4.563070839989905, -1.5125683663005431, -0.01191139712795546, -0.106672961687893, 2.6266978096399787}, {0.04685561695899773, -0.036392379186799356, -0.0002865880912100944, -0.002566550350522837, 0.06319832202450767}},
  {0.3, {0.7842735347855208, 0.3328312480926164, 0.9134330350514333, 0.9397262079681602, -1.1091623712921952}, {1.2095176322419416, 0.0712058214328775, 0.19541959589144392, 0.20104475006643507, -0.23729387379586536}},
  {0.5235987755982988, {2.185262079056387, -0.04892698270045923, -0.6059423952504954, 0.600149321696642, -0.4885771515933718, 0.6271570321279208}, {2.185262079056387, -0.04892698270045923, -0.6059423952504954, 0.600149321696642, -0.4885771515933718, 0.6271570321279208}},
  {0.7853981633974483, {-3.6041966313591245, 2.176075411127039, -3.791620939105172, 1.1271976803983064, -0.6396751824653477, -1.5044489077123868}, {0.598673384724505, 0.27132076171181246, -0.4727526856855644, 0.14054298400470108, -0.07975696108878197, -0.18758000401532104}},
  {1.0471975511965976, {0.153073453363695, -0.5753083988801887, -0.7719429461651369, 0.3949064774378438, 1.9312068474400939, -0.9977568753677936}, {1.0818114981078566, -0.44730439509097714, -0.6001884784773498, 0.30704123797196486, 1.5015204234305646, -0.7757596385746462}},
  {1.0, {3.465501948764611, 3.244673081732291, -3.3602407150543963, 0.5707038160847175, 1.572117289157872, -2.732568191890166}, {3.586899170358615, 3.2000214006193075, -3.3139986459485202, 0.5628500557323296, 1.5504825425749622, -2.6949638599743597}},
  {0.3, {1.079217769211546, 0.8779097900984013, 1.698437695911691, 0.38983442136617874, 0.9460304564262813, 1.8121165247471582}, {1.782799687729366, 0.1713227950144294, 0.3314476003018264, 0.07607560982473714, 0.18461644213247752, 0.3536318553420793}},
  {0.7853981633974483, {0.0, 3.0, 4.0}, {2.5000000102399995, 1.4999999938559971, 1.9999999918080023}},
};

// Projections onto the nondecreasing cone at d=6 and the pinned d=3 case.
inline const std::vector<ProjCase> kMonotoneCases = {
  {0.0, {-0.32364996364172255, -2.505539203792562, -1.0690217887092732, 1.0036028895994535, 1.387240218549159, 2.4028507016345904}, {-1.4145945837171423, -1.4145945837171423, -1.0690217887092732, 1.0036028895994535, 1.387240218549159, 2.4028507016345904}},
  {0.0, {-4.547612405713071, -1.3957838531446007, -0.4595143936860184, 1.2887159467107563, -0.38995495213176007, -2.808283257663233}, {-4.547612405713071, -1.3957838531446007, -0.5922591641925653, -0.5922591641925632, -0.592259164192563, -0.5922591641925634}},
  {0.0, {1.2558055842632285, 0.6863464476447861, -2.4529894373111922, -1.332718236672211, -2.9492423892441124, -0.9653893732357887}, {-0.9596979007592128, -0.9596979007592136, -0.9596979007592172, -0.9596979007592163, -0.9596979007592155, -0.9596979007592142}},
  {0.0, {-1.7115850848029082, -0.4744414928532117, -2.267448921009222, 0.5326115578255493, 0.5449682423062886, -3.3181413668791326}, {-1.7115850848029082, -1.370945206931217, -1.370945206931217, -0.7468538555824311, -0.7468538555824319, -0.7468538555824318}},
  {0.0, {-1.1182848883101062, -1.3965589327045915, 1.2032764757927488, 1.6134469341672866, -1.5535950767446103, 0.20837132353627}, {-1.257421910507349, -1.257421910507349, 0.36787491418792295, 0.3678749141879243, 0.36787491418792495, 0.36787491418792284}},
  {0.0, {3.0, 1.0, 2.0}, {2.0, 2.0, 2.0}},
};

// Nonnegative-combination cones {X b : b >= 0}; mat is X (rows x cols).
inline const std::vector<MatCase> kGeneratorCases = {
  {2, 2, {1.0, 1.0, 0.0, 1.0}, {-1.0, 2.0}, {0.49999999999999994, 0.49999999999999994}},
  {3, 3, {1.0, -1.0, 0.5, 2.0, 0.5, -1.0, 0.0, 1.0, 1.0}, {1.0, -2.0, 3.0}, {1.0000000000000004, -2.0, 3.0}},
  {3, 2, {1.0, 0.9, 1.0, 1.0, 1.0, 1.1}, {0.5, -4.0, 2.5}, {0.0, 0.0, 0.0}},
};

// Projections onto the cone of convex sequences at d=6
// (rows of A encode -x[i-1] + 2 x[i] - x[i+1] <= 0).
inline const std::vector<ProjCase> kConvexSeqCases = {
  {0.0, {1.612751669953318, 2.7510387642107434, 0.7326295505602828, -1.0822857477425054, 2.3385078798932994, 1.480594781936964}, {2.388941932287206, 1.5737695560668286, 0.7585971798464484, -0.056575196373930936, 1.0373094102038731, 2.131194016781677}},
  {0.0, {3.953667014631855, -0.9165135756236379, -0.9904351268568203, 2.852542461360023, 2.17534400583328, -0.4272693896407722}, {3.953667014631855, -0.2901198259167498, 0.1243069245488293, 0.5387336750144134, 0.9531604254799984, 1.3675871759455815}},
  {0.0, {-3.860821308497993, -1.2340497776976842, -1.1067563464202894, 2.773422364488311, -1.5292574191994404, 1.881934700451092}, {-2.725612481622038, -1.8585524895437293, -0.9914924974654211, -0.12443250538710915, 0.7426274866912017, 1.881934700451092}},
};

// One generic (non-axis-aligned) subspace projection case.
inline const MatCase kSubspaceCase = {5, 2, {-0.1284094820836792, -0.22053138803541547, -0.796825282049477, -0.41576448086849366, -0.1986361187348079, 0.0232525395881322, 0.10641696600555361, 0.4750666065529995, 0.5457101762638452, -0.7431533099436783}, {-0.11416014445729655, 1.7412738366841587, 0.08904687115378083, 0.8956882370088884, -1.8633059650275363}, {0.051320197692425996, 1.3793204464439877, 0.48514450036436213, 0.28295723304053216, -2.0892136033166753}};

// P(|N(0,1)| > sqrt(2/pi)) = erfc(sqrt(1/pi)).
inline constexpr double kHalfNormalExceedance = 0.424937483683362;

// Exact pair-overlap exponential moments E exp(lam <eta,eta'>)
// for the s-sparse ensemble: (d, s, lam, value).
struct MomentCase { int d; int s; double lam; double value; };
inline const std::vector<MomentCase> kSparseMoments = {
  {4, 2, 1.0, 1.718861151876593},
  {100, 10, 1.25, 1.1406148094613875},
  {81, 9, 1.125, 1.1404380988146738},
  {100, 10, 1.25, 1.1406148094613875},
  {400, 20, 2.5, 1.1414654075541166},
  {16, 4, 2.0, 1.7828705789895893},
};

// Closed-form moment bound exp(exp((2+lam)/(sqrt(d)-1)) - (1-1/sqrt(d))^2)
// evaluated at lam = sqrt(d)/8: (d, value).
struct BoundCase { int d; double value; };
inline const std::vector<BoundCase> kMomentBounds = {
  {81, 1.989295863375941},
  {100, 1.8681018986133695},
  {400, 1.4401409795943163},
};

// Staircase-prior partition: (d, m, s, block lengths).
struct FgPartition { long d; long m; long s; std::vector<long> blocks; };
inline const std::vector<FgPartition> kFgPartitions = {
  {256, 2, 1, {232, 24}},
  {1000, 3, 1, {894, 99, 7}},
  {1024, 3, 1, {915, 101, 8}},
  {4096, 3, 1, {3646, 405, 45}},
  {10000, 4, 2, {8895, 988, 109, 8}},
};

// Exact enumeration minima of the centered staircase sample norm^2.
struct FgCenteredMin { long d; double min_norm_sq; };
inline const std::vector<FgCenteredMin> kFgCenteredMinima = {
  {1000, 0.0005078757818004273},
  {10000, 0.5005920559233101},
};

// Exact testing radii (squared separation at which the optimal-threshold
// total error equals 0.1) for the k-dimensional subspace problem:
// chi2_k null versus noncentral chi2_k(eps^2) alternative.  Thresholds via
// the density crossing (monotone likelihood ratio), roots via Brent.
struct SubspaceRadius { int k; double radius_sq; };
inline const std::vector<SubspaceRadius> kSubspaceRadii = {
  {4, 18.544780881321341},
  {16, 28.420876270254009},
  {64, 47.420659428536929},
};

// Two-coordinate truncation statistic against the worst unit direction of
// the product cone with half-angle pi/4 (coordinate mass cos^2 = 1/2):
// chi2_2 versus noncentral chi2_2(eps^2/2).
// Optimal-threshold total error at eps^2 = 10:
inline constexpr double kProductTruncMinTotalAtEpsSq10 = 0.44042102439120723;
// ... at eps^2 = 20 (every unit cone direction has at least this mass):
inline constexpr double kProductTruncMinTotalAtEpsSq20 = 0.21250426230422298;
// Exact worst-direction truncation radius^2 at total error 0.1:
inline constexpr double kProductTruncRadiusSq = 30.842873576523544;

// Projection prior on the full space at d = 8 with width set to the exact
// chi_8 mean: samples are Gaussians conditioned on norm >= width/2, rescaled
// by width/2, so the pair moment E exp(eps^2 <eta, eta'>) factors through the
// uniform-sphere overlap density and two conditioned chi radii.  Evaluated
// by tensor Gauss-Legendre quadrature (800 and 1200 nodes agree to 14
// digits) with the overlap average in closed Bessel form.
inline constexpr double kProjectionFullD8Width = 2.7416246753776572;
inline constexpr double kProjectionFullD8MomentEpsSq05 = 1.3505603086249407;

}  // namespace oracle
