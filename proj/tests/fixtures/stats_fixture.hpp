// Generated by gen_stats_fixture.py (numpy/scipy reference values). Do not edit.
#pragma once

namespace fixture {

inline constexpr int kRows = 50;
inline constexpr int kItems = 20;
inline constexpr double kPre[] = {40.5, 36.8, 44.8, 21.5, 46.4, 39.1, 34.3, 44.2, 19.6, 41.1, 34.2, 47.9, 48.3, 31.9, 31.8, 25.4, 33.5, 46.8, 53.3, 45.7, 43.4, 32.6, 45.3, 33.2, 45.9, 40.6, 53.3, 45.4, 59.4, 38.1, 52.1, 45.7, 63.4, 19.5, 53.5, 30.7, 32.6, 42.8, 24.9, 28.7, 36.9, 39.1, 20.2, 32.5, 41.2, 41.4, 35.1, 43.0, 36.8, 57.1};
inline constexpr double kPost[] = {78.2, 82.3, 85.4, 74.2, 82.7, 92.0, 68.5, 76.9, 59.7, 86.9, 65.5, 88.4, 93.3, 76.6, 84.7, 77.5, 81.5, 100.0, 100.0, 80.7, 100.0, 77.2, 84.8, 83.6, 86.5, 91.2, 87.5, 96.9, 93.0, 86.5, 95.2, 86.2, 100.0, 59.3, 91.6, 79.3, 95.0, 78.8, 80.3, 83.4, 71.8, 85.8, 69.9, 69.3, 95.9, 94.3, 95.4, 91.5, 90.3, 100.0};
inline constexpr double kBadges[] = {2.0, 5.0, 3.0, 7.0, 6.0, 3.0, 6.0, 6.0, 10.0, 8.0, 5.0, 8.0, 5.0, 3.0, 2.0, 8.0, 2.0, 9.0, 5.0, 10.0, 3.0, 4.0, 3.0, 5.0, 2.0, 4.0, 5.0, 11.0, 10.0, 5.0, 2.0, 10.0, 8.0, 10.0, 4.0, 2.0, 2.0, 7.0, 10.0, 7.0, 2.0, 4.0, 9.0, 7.0, 7.0, 6.0, 9.0, 8.0, 4.0, 8.0};
inline constexpr double kNegRank[] = {-38.0, -36.0, -18.0, -46.0, -8.0, -24.0, -47.0, -40.0, -48.0, -16.0, -49.0, -31.0, -15.0, -34.0, -17.0, -41.0, -23.0, -21.0, -1.0, -43.0, -7.0, -35.0, -14.0, -10.0, -25.0, -3.0, -33.0, -6.0, -22.0, -19.0, -26.0, -37.0, -2.0, -45.0, -9.0, -42.0, -5.0, -30.0, -20.0, -27.0, -50.0, -29.0, -44.0, -39.0, -13.0, -28.0, -4.0, -11.0, -32.0, -12.0};
inline constexpr double kPoints[] = {6062.0, 6152.0, 6693.0, 5651.0, 6873.0, 6551.0, 5560.0, 5983.0, 5401.0, 6721.0, 5375.0, 6248.0, 6745.0, 6183.0, 6695.0, 5933.0, 6598.0, 6643.0, 7485.0, 5846.0, 6970.0, 6156.0, 6747.0, 6855.0, 6477.0, 7311.0, 6213.0, 6990.0, 6637.0, 6660.0, 6475.0, 6064.0, 7449.0, 5744.0, 6860.0, 5926.0, 7007.0, 6309.0, 6644.0, 6418.0, 5307.0, 6356.0, 5786.0, 6049.0, 6749.0, 6402.0, 7219.0, 6795.0, 6228.0, 6768.0};
inline constexpr double kItemsRowMajor[] = {3.0, 1.0, 3.0, 2.0, 2.0, 3.0, 2.0, 2.0, 4.0, 2.0, 4.0, 1.0, 2.0, 3.0, 2.0, 2.0, 3.0, 3.0, 3.0, 2.0, 3.0, 3.0, 4.0, 3.0, 2.0, 3.0, 1.0, 3.0, 3.0, 3.0, 2.0, 2.0, 3.0, 3.0, 3.0, 4.0, 3.0, 1.0, 3.0, 2.0, 1.0, 4.0, 2.0, 3.0, 4.0, 4.0, 3.0, 2.0, 3.0, 3.0, 4.0, 3.0, 4.0, 2.0, 2.0, 3.0, 3.0, 3.0, 2.0, 3.0, 2.0, 4.0, 2.0, 2.0, 1.0, 2.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 3.0, 2.0, 2.0, 2.0, 2.0, 2.0, 3.0, 4.0, 3.0, 3.0, 2.0, 3.0, 3.0, 3.0, 4.0, 3.0, 3.0, 2.0, 2.0, 3.0, 3.0, 2.0, 2.0, 2.0, 2.0, 3.0, 4.0, 4.0, 4.0, 3.0, 4.0, 2.0, 3.0, 4.0, 5.0, 2.0, 3.0, 3.0, 2.0, 4.0, 4.0, 3.0, 3.0, 5.0, 5.0, 2.0, 3.0, 1.0, 1.0, 2.0, 3.0, 1.0, 2.0, 3.0, 1.0, 2.0, 1.0, 3.0, 2.0, 1.0, 1.0, 1.0, 2.0, 1.0, 1.0, 2.0, 4.0, 2.0, 2.0, 2.0, 1.0, 2.0, 2.0, 3.0, 3.0, 2.0, 3.0, 1.0, 4.0, 3.0, 3.0, 2.0, 3.0, 3.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 3.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 1.0, 1.0, 1.0, 1.0, 3.0, 1.0, 1.0, 3.0, 4.0, 5.0, 3.0, 2.0, 4.0, 3.0, 4.0, 2.0, 3.0, 3.0, 3.0, 3.0, 3.0, 5.0, 3.0, 4.0, 3.0, 4.0, 4.0, 2.0, 1.0, 1.0, 1.0, 2.0, 1.0, 1.0, 2.0, 3.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 3.0, 1.0, 3.0, 5.0, 3.0, 4.0, 2.0, 4.0, 2.0, 4.0, 3.0, 4.0, 4.0, 3.0, 2.0, 5.0, 4.0, 4.0, 3.0, 5.0, 5.0, 2.0, 4.0, 4.0, 2.0, 3.0, 5.0, 3.0, 5.0, 3.0, 3.0, 5.0, 4.0, 4.0, 5.0, 4.0, 3.0, 4.0, 4.0, 3.0, 2.0, 2.0, 4.0, 3.0, 2.0, 1.0, 1.0, 4.0, 2.0, 3.0, 3.0, 4.0, 2.0, 2.0, 2.0, 2.0, 3.0, 3.0, 3.0, 1.0, 2.0, 2.0, 2.0, 4.0, 3.0, 2.0, 3.0, 3.0, 3.0, 2.0, 2.0, 4.0, 3.0, 2.0, 3.0, 3.0, 2.0, 3.0, 4.0, 2.0, 3.0, 1.0, 2.0, 3.0, 2.0, 3.0, 2.0, 2.0, 1.0, 1.0, 2.0, 2.0, 3.0, 2.0, 3.0, 1.0, 4.0, 2.0, 1.0, 1.0, 1.0, 3.0, 2.0, 2.0, 2.0, 2.0, 4.0, 2.0, 3.0, 2.0, 4.0, 2.0, 2.0, 2.0, 3.0, 3.0, 4.0, 4.0, 5.0, 3.0, 5.0, 4.0, 5.0, 4.0, 4.0, 4.0, 5.0, 5.0, 3.0, 4.0, 4.0, 4.0, 4.0, 3.0, 4.0, 4.0, 5.0, 5.0, 4.0, 5.0, 5.0, 3.0, 5.0, 4.0, 5.0, 5.0, 4.0, 3.0, 5.0, 4.0, 4.0, 5.0, 3.0, 4.0, 5.0, 4.0, 5.0, 5.0, 3.0, 5.0, 2.0, 2.0, 5.0, 5.0, 2.0, 2.0, 3.0, 3.0, 2.0, 3.0, 3.0, 3.0, 4.0, 1.0, 1.0, 2.0, 3.0, 3.0, 2.0, 3.0, 3.0, 4.0, 5.0, 5.0, 4.0, 4.0, 4.0, 4.0, 5.0, 5.0, 4.0, 4.0, 5.0, 5.0, 3.0, 4.0, 4.0, 4.0, 5.0, 4.0, 2.0, 3.0, 3.0, 2.0, 2.0, 3.0, 2.0, 2.0, 1.0, 2.0, 1.0, 2.0, 2.0, 2.0, 4.0, 4.0, 3.0, 3.0, 3.0, 2.0, 3.0, 4.0, 2.0, 4.0, 2.0, 1.0, 4.0, 2.0, 1.0, 3.0, 3.0, 3.0, 4.0, 2.0, 3.0, 4.0, 3.0, 3.0, 2.0, 3.0, 3.0, 2.0, 2.0, 2.0, 3.0, 3.0, 3.0, 4.0, 3.0, 3.0, 3.0, 2.0, 2.0, 1.0, 4.0, 2.0, 2.0, 2.0, 3.0, 4.0, 3.0, 5.0, 3.0, 3.0, 3.0, 3.0, 3.0, 4.0, 2.0, 3.0, 3.0, 3.0, 3.0, 2.0, 4.0, 3.0, 5.0, 2.0, 4.0, 4.0, 5.0, 3.0, 3.0, 4.0, 3.0, 3.0, 3.0, 3.0, 5.0, 1.0, 4.0, 4.0, 5.0, 3.0, 3.0, 5.0, 4.0, 3.0, 4.0, 3.0, 4.0, 2.0, 4.0, 5.0, 3.0, 3.0, 1.0, 5.0, 3.0, 4.0, 2.0, 4.0, 2.0, 2.0, 3.0, 5.0, 2.0, 5.0, 3.0, 3.0, 4.0, 3.0, 5.0, 5.0, 5.0, 5.0, 5.0, 3.0, 5.0, 3.0, 4.0, 5.0, 5.0, 4.0, 3.0, 3.0, 5.0, 4.0, 5.0, 5.0, 4.0, 3.0, 5.0, 3.0, 5.0, 4.0, 5.0, 4.0, 3.0, 4.0, 4.0, 3.0, 4.0, 4.0, 4.0, 3.0, 3.0, 5.0, 2.0, 4.0, 3.0, 3.0, 3.0, 2.0, 3.0, 3.0, 2.0, 4.0, 3.0, 2.0, 2.0, 4.0, 4.0, 3.0, 3.0, 3.0, 3.0, 2.0, 3.0, 4.0, 4.0, 4.0, 4.0, 5.0, 4.0, 5.0, 5.0, 4.0, 5.0, 3.0, 4.0, 4.0, 4.0, 4.0, 4.0, 5.0, 4.0, 5.0, 4.0, 4.0, 4.0, 4.0, 4.0, 2.0, 1.0, 3.0, 2.0, 4.0, 2.0, 4.0, 1.0, 2.0, 3.0, 4.0, 4.0, 3.0, 4.0, 4.0, 3.0, 3.0, 5.0, 4.0, 5.0, 5.0, 5.0, 5.0, 5.0, 5.0, 4.0, 5.0, 5.0, 4.0, 5.0, 4.0, 5.0, 4.0, 4.0, 5.0, 5.0, 3.0, 1.0, 1.0, 1.0, 1.0, 2.0, 1.0, 1.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 4.0, 3.0, 4.0, 4.0, 4.0, 3.0, 5.0, 3.0, 2.0, 4.0, 5.0, 3.0, 3.0, 4.0, 4.0, 5.0, 3.0, 2.0, 3.0, 4.0, 3.0, 4.0, 1.0, 3.0, 3.0, 3.0, 3.0, 3.0, 3.0, 1.0, 4.0, 4.0, 3.0, 4.0, 3.0, 2.0, 1.0, 1.0, 3.0, 4.0, 4.0, 5.0, 4.0, 4.0, 5.0, 4.0, 4.0, 4.0, 5.0, 5.0, 3.0, 3.0, 3.0, 4.0, 4.0, 5.0, 5.0, 4.0, 4.0, 4.0, 2.0, 2.0, 1.0, 3.0, 2.0, 3.0, 4.0, 3.0, 2.0, 2.0, 2.0, 1.0, 3.0, 3.0, 3.0, 3.0, 2.0, 2.0, 1.0, 1.0, 3.0, 4.0, 4.0, 2.0, 4.0, 1.0, 1.0, 1.0, 3.0, 1.0, 3.0, 1.0, 2.0, 4.0, 1.0, 5.0, 2.0, 2.0, 3.0, 2.0, 4.0, 3.0, 2.0, 3.0, 2.0, 3.0, 2.0, 3.0, 4.0, 5.0, 4.0, 3.0, 2.0, 4.0, 2.0, 3.0, 2.0, 3.0, 3.0, 2.0, 2.0, 1.0, 1.0, 3.0, 2.0, 1.0, 2.0, 1.0, 2.0, 1.0, 2.0, 1.0, 2.0, 2.0, 2.0, 1.0, 3.0, 1.0, 1.0, 2.0, 4.0, 4.0, 3.0, 4.0, 3.0, 5.0, 3.0, 2.0, 3.0, 4.0, 3.0, 3.0, 3.0, 3.0, 4.0, 2.0, 2.0, 4.0, 5.0, 4.0, 1.0, 2.0, 1.0, 1.0, 2.0, 1.0, 3.0, 1.0, 1.0, 1.0, 2.0, 4.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 3.0, 2.0, 1.0, 1.0, 2.0, 1.0, 1.0, 2.0, 1.0, 2.0, 2.0, 2.0, 3.0, 1.0, 2.0, 1.0, 3.0, 1.0, 4.0, 3.0, 3.0, 4.0, 5.0, 5.0, 3.0, 5.0, 4.0, 4.0, 4.0, 3.0, 5.0, 4.0, 4.0, 5.0, 4.0, 4.0, 4.0, 4.0, 3.0, 3.0, 5.0, 4.0, 5.0, 5.0, 4.0, 4.0, 5.0, 4.0, 4.0, 3.0, 3.0, 4.0, 3.0, 5.0, 3.0, 4.0, 3.0, 3.0, 3.0, 4.0, 4.0, 5.0, 5.0, 4.0, 5.0, 5.0, 4.0, 5.0, 5.0, 5.0, 5.0, 4.0, 3.0, 3.0, 4.0, 5.0, 5.0, 3.0, 4.0, 5.0, 4.0, 4.0, 5.0, 5.0, 3.0, 4.0, 3.0, 5.0, 5.0, 5.0, 4.0, 4.0, 4.0, 2.0, 4.0, 3.0, 4.0, 4.0, 2.0, 4.0, 4.0, 2.0, 4.0, 3.0, 3.0, 4.0, 4.0, 4.0, 3.0, 3.0, 2.0, 2.0, 5.0, 3.0, 3.0, 2.0, 3.0, 4.0, 3.0, 4.0, 4.0, 4.0, 5.0, 5.0, 4.0, 4.0, 4.0, 5.0, 3.0, 4.0, 5.0, 5.0, 4.0, 4.0, 4.0, 5.0, 5.0, 5.0, 5.0, 4.0};

inline constexpr double kPairedT = 40.40623248466402;
inline constexpr double kPairedP = 2.7541504202055292e-39;
inline constexpr double kPostWeak[] = {36.6, 39.1, 37.0, 39.3, 42.0, 52.3, 49.9, 34.0, 25.5, 45.6, 33.4, 56.3, 43.1, 27.0, 23.1, 27.9, 35.5, 42.1, 51.9, 41.5, 42.0, 40.3, 38.9, 30.7, 43.8, 27.7, 47.3, 49.8, 61.6, 28.7, 39.6, 38.2, 73.1, 14.1, 49.2, 24.1, 26.1, 56.8, 23.3, 39.6, 45.2, 43.5, 36.8, 25.2, 45.7, 31.5, 33.5, 31.2, 33.8, 71.1};
inline constexpr double kWeakT = -0.10322775994976045;
inline constexpr double kWeakP = 0.9182035404818143;
inline constexpr double kPearsonR = 0.82442679497392;
inline constexpr double kPearsonP = 1.8747037735497462e-13;
inline constexpr double kAlpha = 0.9589688667106047;
inline constexpr double kOlsCoefficients[] = {-0.07020229517480381, -0.10953219367149156, 0.01926045605456443};
inline constexpr double kOlsIntercept = -41.3146799682556;
inline constexpr double kOlsStandardized[] = {-0.01868090612902192, -0.15350776723212584, 0.9735804461021232};
inline constexpr double kOlsStdErrors[] = {0.31371114000458306, 0.2987336601205767, 0.008283375122728986};
inline constexpr double kOlsT[] = {-0.22378005184571453, -0.3666550117830093, 2.3251942317226617};
inline constexpr double kOlsP[] = {0.8239193627515498, 0.7155575785642557, 0.024527348354220352};
inline constexpr double kOlsR2 = 0.680959058220802;

struct TPoint { double t, df, p_two_sided, cdf; };
inline constexpr TPoint kTGrid[] = {
    {0.5, 3.0, 0.651447964848151, 0.6742760175759246},
    {1.96, 10.0, 0.07843624024769974, 0.9607818798761502},
    {2.5, 49.0, 0.01581578884718009, 0.9920921055764099},
    {-3.2, 7.0, 0.015065811342489297, 0.007532905671244649},
    {10.0, 2.0, 0.009852457023325692, 0.9950737714883371},
    {0.0, 5.0, 1.0, 0.5},
    {4.0, 120.0, 0.00010994384262421648, 0.9999450280786879},
};

}  // namespace fixture
