__all__ = ['cli', 'ladder', 'matrix_elements', 'model', 'oracle', 'reference', 'spectrum', 'wavefunction']
