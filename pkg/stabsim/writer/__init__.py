# stabsim -- Output generation
#
# For license information, see LICENSE.txt

"""
Output generation for experiment results and traces:

  - L{csvfile}: experiment rows, cell summaries and traces as CSV.
  - L{plaintext}: cell summaries as a fixed-width text table.
  - L{chart}: cell summaries as an SVG line chart.
"""
__docformat__ = 'epytext en'
